use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::adaptive_gk;

use super::kernel::KernelSpec;
use super::profile::ProfileFunction;

const MAX_DOUBLINGS: usize = 40;
const MAX_HALVINGS: usize = 400;
const PANELS_PER_CELL: usize = 2000;

/// Angular frequency of u near `t`, used only to size quadrature cells.
fn local_frequency(kernel: &KernelSpec, t: f64) -> f64 {
    match kernel {
        KernelSpec::ScaledBessel { alpha, .. } => (alpha * t.powf(alpha - 1.0)).max(1.0),
        KernelSpec::Ode(k) => k.phi.eval(t).abs().sqrt().max(1.0),
        _ => 1.0,
    }
}

/// ∫ f(t)u(xt) over [a, b] cut into half-period cells and at profile
/// breakpoints, each cell integrated by adaptive Gauss–Kronrod.
fn segment(kernel: &KernelSpec, f: &ProfileFunction, x: f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let h = |t: f64| f.eval(t) * kernel.eval(x * t);
    let mut cuts = vec![a];
    let mut t = a;
    loop {
        let w = PI / (2.0 * x * local_frequency(kernel, x * t));
        t += w;
        if t >= b {
            break;
        }
        cuts.push(t);
    }
    cuts.extend(f.breakpoints.iter().copied().filter(|&p| p > a && p < b));
    let s = f.support_upper();
    if s > a && s < b {
        cuts.push(s);
    }
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let cell_tol = tol / cuts.len() as f64;
    let mut total = 0.0;
    for w in cuts.windows(2) {
        if w[0] >= s {
            break;
        }
        let v = adaptive_gk(&h, w[0], w[1], cell_tol, 1e-13, PANELS_PER_CELL)?;
        if !v.is_finite() {
            return Err(Error::Span(format!(
                "kernel {} cannot be evaluated on [{}, {}]",
                kernel.label(),
                x * w[0],
                x * w[1]
            )));
        }
        total += v;
    }
    Ok(total)
}

/// Plain adaptive quadrature of f(t)u(xt) over [ε, T]: ε is halved and T
/// doubled until two consecutive added pieces are both below tol/4. No
/// zeros are located and no series acceleration is applied.
pub fn brute_force_oracle(kernel: &KernelSpec, f: &ProfileFunction, x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("oracle needs finite x > 0, got {x}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let piece_tol = 1e-2 * tol;
    let b0 = 4.0 * PI / x;
    let a0 = b0 / 1024.0;
    let mut total = segment(kernel, f, x, a0, b0, piece_tol)?;

    let mut lo = a0;
    let mut small = 0;
    let mut converged = false;
    for _ in 0..MAX_HALVINGS {
        let piece = segment(kernel, f, x, 0.5 * lo, lo, piece_tol)?;
        total += piece;
        lo *= 0.5;
        small = if piece.abs() < 0.25 * tol { small + 1 } else { 0 };
        if small >= 2 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Divergence(format!(
            "integral over (0, {a0}] did not settle after {MAX_HALVINGS} halvings"
        )));
    }

    let mut hi = b0;
    let s = f.support_upper();
    small = 0;
    converged = false;
    for _ in 0..MAX_DOUBLINGS {
        if hi >= s {
            converged = true;
            break;
        }
        let piece = segment(kernel, f, x, hi, 2.0 * hi, piece_tol)?;
        total += piece;
        hi *= 2.0;
        small = if piece.abs() < 0.25 * tol { small + 1 } else { 0 };
        if small >= 2 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Divergence(format!(
            "integral over [{b0}, {hi}] did not settle after {MAX_DOUBLINGS} doublings"
        )));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_of_exponential() {
        let f = ProfileFunction::new("exp", |t: f64| (-t).exp());
        let v = brute_force_oracle(&KernelSpec::Sine, &f, 1.0, 1e-10).unwrap();
        assert!((v - 0.5).abs() < 1e-9, "{v}");
    }

    #[test]
    fn zero_profile() {
        let v = brute_force_oracle(
            &KernelSpec::bessel_sqrt(1.0).unwrap(),
            &ProfileFunction::zero(),
            1.0,
            1e-10,
        )
        .unwrap();
        assert_eq!(v, 0.0);
    }
}
