//! Closed-form transform identities and the fixed matrix they are checked
//! on.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::FunctionCatalogEntry;
use crate::error::Result;
use crate::special::{bessel_i, bessel_k, cos_pi, gamma, sin_pi};
use crate::transforms::{fourier_cosine_full, fourier_sine, hankel_transform};

/// Relative tolerance for identities with elementary or Γ references.
pub const CLOSED_FORM_TOL: f64 = 1e-7;
/// Relative tolerance for identities whose reference is an I·K product.
pub const IK_TOL: f64 = 1e-5;
/// Absolute tolerance handed to the transform evaluations.
pub const EVAL_TOL: f64 = 1e-11;

/// ∫₀^∞ sin(xt) / (t(t² + a²)) dt.
pub fn sine_rational(a: f64, x: f64) -> f64 {
    PI / (2.0 * a * a) * (1.0 - (-a * x).exp())
}

/// ∫₀^∞ t^{−ν} sin(xt) dt, 0 < ν < 2.
pub fn sine_power(nu: f64, x: f64) -> Result<f64> {
    Ok(PI / (2.0 * gamma(nu)? * sin_pi(0.5 * nu)) * x.powf(nu - 1.0))
}

/// ∫₀^∞ t^{−ν} cos(xt) dt, 0 < ν < 1.
pub fn cosine_power(nu: f64, x: f64) -> Result<f64> {
    Ok(PI / (2.0 * gamma(nu)? * cos_pi(0.5 * nu)) * x.powf(nu - 1.0))
}

/// ∫₀^∞ e^{−bt} J_ν(xt) dt / t = [√(x² + b²) − b]^ν / (ν x^ν), ν > 0.
pub fn gegenbauer(nu: f64, b: f64, x: f64) -> f64 {
    ((x * x + b * b).sqrt() - b).powf(nu) / (nu * x.powf(nu))
}

/// H_ν t^{−β} at x, 0 < β < ν + 3/2.
pub fn hankel_power(nu: f64, beta: f64, x: f64) -> Result<f64> {
    Ok(
        2f64.powf(0.5 - beta) * x.powf(beta - 1.0) * gamma((2.0 * nu - 2.0 * beta + 3.0) / 4.0)?
            / gamma((2.0 * nu + 2.0 * beta + 1.0) / 4.0)?,
    )
}

fn ik(nu: f64, z: f64) -> Result<f64> {
    Ok(bessel_i(nu, z)?.value * bessel_k(nu, z)?.value)
}

/// ∫₀^∞ sin(2xt) / √(t(t² + a²)) dt = √(πx) I_{1/4}(ax) K_{1/4}(ax).
pub fn sine_ik(a: f64, x: f64) -> Result<f64> {
    Ok((PI * x).sqrt() * ik(0.25, a * x)?)
}

/// ∫₀^∞ J_ν(2xt) / √(t² + a²) dt = I_{ν/2}(ax) K_{ν/2}(ax).
pub fn hankel_ik(nu: f64, a: f64, x: f64) -> Result<f64> {
    ik(0.5 * nu, a * x)
}

/// ∫₀^∞ J_ν(2xt) / (t^ν (t² + a²)^{ν+1/2}) dt
/// = (2/a)^{2ν} Γ(ν+1)/Γ(2ν+1) x^ν I_ν(ax) K_ν(ax).
pub fn hankel_ik_weighted(nu: f64, a: f64, x: f64) -> Result<f64> {
    Ok((2.0 / a).powf(2.0 * nu) * gamma(nu + 1.0)? / gamma(2.0 * nu + 1.0)? * x.powf(nu) * ik(nu, a * x)?)
}

/// One row of the validation report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationCase {
    pub case: String,
    /// Closed-form value; for positivity-only cases the lower bound 0.
    pub reference: f64,
    pub computed: f64,
    /// Relative error; NaN for positivity-only cases.
    pub rel_error: f64,
    /// Relative tolerance, or the transform's error bound for
    /// positivity-only cases.
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Copy)]
enum Check {
    Match { tol: f64 },
    Positive,
}

struct CaseDef {
    name: String,
    check: Check,
    run: Box<dyn Fn() -> Result<(f64, f64, f64)> + Send + Sync>,
}

fn entry(family: &str, params: &str) -> FunctionCatalogEntry {
    FunctionCatalogEntry::parse(family, params).expect("fixed validation parameters are admissible")
}

fn case_defs() -> Vec<CaseDef> {
    let mut v: Vec<CaseDef> = Vec::new();
    let mut add = |name: String, check: Check, run: Box<dyn Fn() -> Result<(f64, f64, f64)> + Send + Sync>| {
        v.push(CaseDef { name, check, run })
    };
    let exact = Check::Match { tol: CLOSED_FORM_TOL };
    let ik_check = Check::Match { tol: IK_TOL };

    for a in [1.0, 2.0] {
        for x in [0.5, 1.0, 2.0] {
            let f = entry("rational", &format!("gamma=1,delta=1,a={a}")).profile();
            add(
                format!("sine_rational(a={a},x={x})"),
                exact,
                Box::new(move || Ok((sine_rational(a, x), fourier_sine(&f, x, EVAL_TOL)?, 0.0))),
            );
        }
    }
    for nu in [0.25, 0.5, 0.75] {
        for x in [0.5, 1.0, 2.0] {
            let f = entry("power", &format!("beta={nu}")).profile();
            add(
                format!("sine_power(nu={nu},x={x})"),
                exact,
                Box::new(move || Ok((sine_power(nu, x)?, fourier_sine(&f, x, EVAL_TOL)?, 0.0))),
            );
        }
    }
    for nu in [0.25, 0.5] {
        for x in [0.5, 1.0, 2.0] {
            let f = entry("power", &format!("beta={nu}")).profile();
            add(
                format!("cosine_power(nu={nu},x={x})"),
                exact,
                Box::new(move || Ok((cosine_power(nu, x)?, fourier_cosine_full(&f, x, EVAL_TOL)?.value, 0.0))),
            );
        }
    }
    for nu in [0.0, 0.5, 1.0, 2.0] {
        for x in [0.5, 1.0, 2.0] {
            // ∫J_ν(xt)dt = x^{−1/2} H_ν[t^{−1/2}](x).
            let f = entry("power", "beta=0.5").profile();
            add(
                format!("bessel_integral(nu={nu},x={x})"),
                exact,
                Box::new(move || Ok((1.0 / x, hankel_transform(nu, &f, x, EVAL_TOL)? / x.sqrt(), 0.0))),
            );
        }
    }
    for nu in [0.5, 1.0, 2.0] {
        for b in [0.5, 1.0] {
            for x in [0.5, 1.0, 2.0] {
                let f = entry("exp_decay", &format!("b={b},beta=1.5")).profile();
                add(
                    format!("gegenbauer(nu={nu},b={b},x={x})"),
                    exact,
                    Box::new(move || {
                        Ok((
                            gegenbauer(nu, b, x),
                            hankel_transform(nu, &f, x, EVAL_TOL)? / x.sqrt(),
                            0.0,
                        ))
                    }),
                );
            }
        }
    }
    for (nu, beta) in [
        (0.5, 1.0),
        (1.0, 0.5),
        (2.0, 1.5),
        (0.0, 0.75),
        (0.25, 1.2),
        (-0.75, 0.5),
    ] {
        for x in [0.5, 1.0, 2.0] {
            let f = entry("power", &format!("beta={beta}")).profile();
            add(
                format!("hankel_power(nu={nu},beta={beta},x={x})"),
                exact,
                Box::new(move || Ok((hankel_power(nu, beta, x)?, hankel_transform(nu, &f, x, EVAL_TOL)?, 0.0))),
            );
        }
    }
    for (a, x) in [(1.0, 1.0), (1.0, 0.5), (2.0, 1.0)] {
        let f = entry("rational", &format!("gamma=0.5,delta=0.5,a={a}")).profile();
        add(
            format!("sine_ik(a={a},x={x})"),
            ik_check,
            Box::new(move || Ok((sine_ik(a, x)?, fourier_sine(&f, 2.0 * x, EVAL_TOL)?, 0.0))),
        );
    }
    for (nu, a, x) in [(1.0, 1.0, 1.0), (0.5, 1.0, 0.5), (1.5, 2.0, 1.0)] {
        let f = entry("rational", &format!("gamma=0.5,delta=0.5,a={a}")).profile();
        add(
            format!("hankel_ik(nu={nu},a={a},x={x})"),
            ik_check,
            Box::new(move || {
                let y = 2.0 * x;
                Ok((
                    hankel_ik(nu, a, x)?,
                    hankel_transform(nu, &f, y, EVAL_TOL)? / y.sqrt(),
                    0.0,
                ))
            }),
        );
    }
    for (nu, a, x) in [(0.5, 1.0, 1.0), (0.25, 1.0, 0.5), (1.5, 2.0, 1.0)] {
        let w = nu + 0.5;
        let f = entry("rational", &format!("gamma={w},delta={w},a={a}")).profile();
        add(
            format!("hankel_ik_weighted(nu={nu},a={a},x={x})"),
            ik_check,
            Box::new(move || {
                let y = 2.0 * x;
                Ok((
                    hankel_ik_weighted(nu, a, x)?,
                    hankel_transform(nu, &f, y, EVAL_TOL)? / y.sqrt(),
                    0.0,
                ))
            }),
        );
    }
    for (a, lambda) in [(1.0, 0.5), (1.0, 2.0), (0.5, 1.0)] {
        for x in [0.5, 1.0, 2.0] {
            let f = entry("shifted_power", &format!("a={a},lambda={lambda}")).profile();
            add(
                format!("cosine_shifted_power_positive(a={a},lambda={lambda},x={x})"),
                Check::Positive,
                Box::new(move || {
                    let r = fourier_cosine_full(&f, x, EVAL_TOL)?;
                    Ok((0.0, r.value, r.tail_bound))
                }),
            );
        }
    }
    v
}

/// Runs every identity of the fixed matrix, in parallel, and returns the
/// rows in matrix order. Evaluation failures surface as errors.
pub fn run_validation() -> Result<Vec<ValidationCase>> {
    case_defs()
        .into_par_iter()
        .map(|s| {
            let (reference, computed, bound) = (s.run)()?;
            Ok(match s.check {
                Check::Match { tol } => {
                    let rel_error = (computed - reference).abs() / reference.abs();
                    ValidationCase {
                        case: s.name,
                        reference,
                        computed,
                        rel_error,
                        tolerance: tol,
                        pass: rel_error <= tol,
                    }
                }
                Check::Positive => ValidationCase {
                    case: s.name,
                    reference,
                    computed,
                    rel_error: f64::NAN,
                    tolerance: bound,
                    pass: computed > bound,
                },
            })
        })
        .collect()
}

/// The failing case with the largest error relative to its tolerance.
pub fn worst_case(cases: &[ValidationCase]) -> Option<&ValidationCase> {
    cases.iter().filter(|c| !c.pass).max_by(|a, b| {
        let r = |c: &ValidationCase| {
            if c.rel_error.is_nan() {
                f64::INFINITY
            } else {
                c.rel_error / c.tolerance
            }
        };
        r(a).total_cmp(&r(b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_spot_values() {
        assert!((gegenbauer(1.0, 1.0, 1.0) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((hankel_power(0.5, 1.0, 1.0).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-14);
        assert!((sine_power(0.5, 1.0).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-14);
        assert!((cosine_power(0.5, 1.0).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-14);
    }
}
