use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::ode::{solve_normal_form_with, OdeOptions, Trajectory};
use super::phi::PhiSpec;

const SPOT_CHECKS: usize = 100;
const GRID: usize = 64;

/// Outcome of the comparison of v″ + φv = 0 against w″ + ψw = 0 with
/// φ < ψ and a shared zero start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub first_root_v: Option<f64>,
    pub first_root_w: Option<f64>,
    /// First zero of w lies left of the first zero of v.
    pub first_root_order: bool,
    /// Smallest (v − w)/max(|v|, |w|) on a grid between the start and the
    /// first zero of w.
    pub worst_domination_margin: f64,
    pub domination: bool,
    /// Every pair of consecutive zeros of v encloses a zero of w.
    pub interlacing: bool,
    pub interlacing_pairs_checked: usize,
    pub pass: bool,
}

/// Solves both equations from `(a, 0, slope)` over `[a, t1]` and checks the
/// domination and interlacing statements of the Sturm comparison theorem.
pub fn compare_solutions(
    phi: &PhiSpec,
    psi: &PhiSpec,
    shared_init: (f64, f64, f64),
    t1: f64,
) -> Result<ComparisonReport> {
    compare_solutions_with(phi, psi, shared_init, t1, OdeOptions::default())
}

pub fn compare_solutions_with(
    phi: &PhiSpec,
    psi: &PhiSpec,
    shared_init: (f64, f64, f64),
    t1: f64,
    opts: OdeOptions,
) -> Result<ComparisonReport> {
    let (a, u0, slope) = shared_init;
    if u0 != 0.0 || !(slope > 0.0) {
        return Err(Error::Precondition(format!(
            "comparison needs v(a) = w(a) = 0 with positive slope, got ({u0}, {slope})"
        )));
    }
    if !(t1 > a) {
        return Err(Error::Domain(format!("empty span ({a}, {t1})")));
    }
    for i in 1..=SPOT_CHECKS {
        let t = a + (t1 - a) * i as f64 / SPOT_CHECKS as f64;
        let (p, q) = (phi.eval(t), psi.eval(t));
        if !(p < q) {
            return Err(Error::Precondition(format!(
                "phi < psi contradicted at t = {t}: {p} >= {q}"
            )));
        }
    }
    let v = solve_normal_form_with(phi, shared_init, t1, opts)?;
    let w = solve_normal_form_with(psi, shared_init, t1, opts)?;
    Ok(assess(&v, &w))
}

fn assess(v: &Trajectory, w: &Trajectory) -> ComparisonReport {
    let a = v.grid()[0];
    let rv = v.detected_roots().first().copied();
    let rw = w.detected_roots().first().copied();
    let first_root_order = match (rw, rv) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    };
    let end = rw.unwrap_or(w.span().1);
    let mut worst = f64::INFINITY;
    for j in 1..=GRID {
        let t = a + (end - a) * j as f64 / (GRID + 1) as f64;
        let (x, y) = (v.eval(t), w.eval(t));
        let scale = x.abs().max(y.abs());
        let m = if scale > 0.0 { (x - y) / scale } else { 0.0 };
        worst = worst.min(m);
    }
    let wr = w.detected_roots();
    let pairs: Vec<(f64, f64)> = v.detected_roots().windows(2).map(|p| (p[0], p[1])).collect();
    let interlacing = pairs.iter().all(|&(lo, hi)| wr.iter().any(|&z| z > lo && z < hi));
    let domination = worst > 0.0;
    ComparisonReport {
        first_root_v: rv,
        first_root_w: rw,
        first_root_order,
        worst_domination_margin: worst,
        domination,
        interlacing,
        interlacing_pairs_checked: pairs.len(),
        pass: first_root_order && domination && interlacing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_against_double_frequency() {
        let r = compare_solutions(&PhiSpec::constant(1.0), &PhiSpec::constant(4.0), (0.0, 0.0, 1.0), 10.0).unwrap();
        assert!(r.pass, "{r:?}");
        assert!((r.first_root_w.unwrap() - PI / 2.0).abs() < 1e-8);
        assert!((r.first_root_v.unwrap() - PI).abs() < 1e-8);
    }

    #[test]
    fn contradicting_declaration_is_rejected() {
        let r = compare_solutions(&PhiSpec::constant(4.0), &PhiSpec::constant(1.0), (0.0, 0.0, 1.0), 10.0);
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
