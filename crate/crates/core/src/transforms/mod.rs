//! (Uf)(x) = ∫₀^∞ f(t)u(xt)dt by arch decomposition, plus an independent
//! brute-force quadrature oracle.

mod arch;
mod kernel;
mod oracle;
mod profile;

pub use arch::{
    arch_integral, arch_series, ArchSeries, Summation, TransformResult, ARCH_REL_TOL, EULER_HEAD, MAX_TERMS,
};
pub use kernel::{KernelSpec, OdeKernel, KERNEL_MAX_ORDER};
pub use oracle::brute_force_oracle;
pub use profile::{Declarations, ProfileFunction, ScalarFn};

use crate::error::{domain, Error, Result};
use crate::special::{cos_pi, sin_pi};

/// Evaluates (Uf)(x). Sine, Hankel, scaled and ODE kernels are summed arch
/// by arch; the cosine kernel goes through −f′ and the sine kernel; the
/// Neumann kernel through two Hankel transforms.
pub fn transform_eval(kernel: &KernelSpec, f: &ProfileFunction, x: f64, tol: f64) -> Result<TransformResult> {
    match kernel {
        KernelSpec::Cosine => fourier_cosine_full(f, x, tol),
        KernelSpec::NeumannSqrt { nu } => y_transform_full(*nu, f, x, tol),
        _ => arch::arch_transform(kernel, f, x, tol),
    }
}

/// ∫₀^∞ f(t) sin(xt) dt.
pub fn fourier_sine(f: &ProfileFunction, x: f64, tol: f64) -> Result<f64> {
    transform_eval(&KernelSpec::Sine, f, x, tol).map(|r| r.value)
}

/// ∫₀^∞ f(t) cos(xt) dt = (1/x)∫₀^∞ [−f′(t)] sin(xt) dt.
pub fn fourier_cosine(f: &ProfileFunction, x: f64, tol: f64) -> Result<f64> {
    fourier_cosine_full(f, x, tol).map(|r| r.value)
}

/// The profile −f′ with the exponent and support bookkeeping of f.
pub fn negated_derivative(f: &ProfileFunction) -> Result<ProfileFunction> {
    let d = f.derivative_fn().ok_or_else(|| {
        Error::Capability(format!(
            "profile {} has no derivative evaluator; the cosine route needs f'",
            f.label
        ))
    })?;
    let support = f.support_upper();
    let mut g = ProfileFunction::new(format!("-d/dt {}", f.label), move |t| -d(t))
        .with_singular_exponent(f.singular_exponent + 1.0)
        .with_breakpoints(f.breakpoints.clone());
    g.declared.support_upper = support;
    Ok(g)
}

pub fn fourier_cosine_full(f: &ProfileFunction, x: f64, tol: f64) -> Result<TransformResult> {
    if !(x > 0.0) {
        return domain(format!("transform needs x > 0, got {x}"));
    }
    if f.singular_exponent >= 1.0 {
        return domain(format!(
            "cosine route needs t f(t) -> 0 at 0+ (singular exponent {} >= 1)",
            f.singular_exponent
        ));
    }
    let g = negated_derivative(f)?;
    let mut r = arch::arch_transform(&KernelSpec::Sine, &g, x, tol * x)?;
    // A profile cut off at a finite support end contributes the boundary
    // term f(S)sin(xS)/x.
    let s = f.support_upper();
    let boundary = if s.is_finite() {
        f.eval(s) * (x * s).sin() / x
    } else {
        0.0
    };
    r.value = r.value / x + boundary;
    r.tail_bound /= x;
    Ok(r)
}

/// (H_ν f)(x) = ∫₀^∞ f(t) J_ν(xt) √(xt) dt.
pub fn hankel_transform(nu: f64, f: &ProfileFunction, x: f64, tol: f64) -> Result<f64> {
    hankel_full(nu, f, x, tol).map(|r| r.value)
}

pub fn hankel_full(nu: f64, f: &ProfileFunction, x: f64, tol: f64) -> Result<TransformResult> {
    arch::arch_transform(&KernelSpec::bessel_sqrt(nu)?, f, x, tol)
}

/// (N_ν f)(x) = cot(νπ)(H_ν f)(x) − csc(νπ)(H_{−ν} f)(x), 1/2 < |ν| < 1.
pub fn y_transform(nu: f64, f: &ProfileFunction, x: f64, tol: f64) -> Result<f64> {
    y_transform_full(nu, f, x, tol).map(|r| r.value)
}

pub fn y_transform_full(nu: f64, f: &ProfileFunction, x: f64, tol: f64) -> Result<TransformResult> {
    KernelSpec::neumann_sqrt(nu)?;
    let (s, c) = (sin_pi(nu), cos_pi(nu));
    let (cot, csc) = (c / s, 1.0 / s);
    // Split the tolerance so the combination meets it.
    let tol_part = tol / (cot.abs() + csc.abs());
    let hp = hankel_full(nu, f, x, tol_part)?;
    let hm = hankel_full(-nu, f, x, tol_part)?;
    let mut warnings = hp.warnings;
    warnings.extend(hm.warnings);
    Ok(TransformResult {
        x,
        value: cot * hp.value - csc * hm.value,
        tail_bound: cot.abs() * hp.tail_bound + csc.abs() * hm.tail_bound,
        series: hp.series.into_iter().chain(hm.series).collect(),
        warnings,
    })
}

/// ∫₀^∞ f(t) J_ν[(xt)^α] √(xt) dt with α > 1, ν > 0, αν ≥ 1/2.
pub fn scaled_hankel(nu: f64, alpha: f64, f: &ProfileFunction, x: f64, tol: f64) -> Result<f64> {
    scaled_hankel_full(nu, alpha, f, x, tol).map(|r| r.value)
}

pub fn scaled_hankel_full(nu: f64, alpha: f64, f: &ProfileFunction, x: f64, tol: f64) -> Result<TransformResult> {
    let kernel = KernelSpec::scaled_bessel(nu, alpha)?;
    if alpha * nu < 0.5 {
        return domain(format!("scaled transform needs alpha*nu >= 1/2, got {}", alpha * nu));
    }
    arch::arch_transform(&kernel, f, x, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cosine_needs_derivative() {
        let f = ProfileFunction::new("exp", |t: f64| (-t).exp());
        assert!(matches!(fourier_cosine(&f, 1.0, 1e-8), Err(Error::Capability(_))));
    }

    #[test]
    fn y_transform_range() {
        let f = ProfileFunction::zero();
        assert!(y_transform(0.25, &f, 1.0, 1e-8).is_err());
        assert_eq!(y_transform(0.75, &f, 1.0, 1e-8).unwrap(), 0.0);
    }

    #[test]
    fn scaled_needs_alpha_above_one() {
        let f = ProfileFunction::new("exp", |t: f64| (-t).exp());
        assert!(scaled_hankel(0.25, 1.0, &f, 1.0, 1e-8).is_err());
        assert!(scaled_hankel(0.2, 2.0, &f, 1.0, 1e-8).is_err());
    }
}
