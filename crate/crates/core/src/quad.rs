//! Quadrature rules.
//!
//! Two independent families live here. The Gauss–Legendre routines drive the
//! arch integrals of the transform evaluator; the Gauss–Kronrod routine backs
//! the brute-force oracle and the tail integrals of the oscillation
//! classifier, so that the oracle never shares a code path with the
//! production evaluator.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Order of the fixed Gauss–Legendre rule used on every arch cell.
pub const GL_ORDER: usize = 32;

const MAX_BISECTION_DEPTH: u32 = 40;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1], found by
/// Newton iteration on the three-term Legendre recurrence.
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl32() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(GL_ORDER))
}

/// 32-point Gauss–Legendre estimate of the integral of `f` over `[a, b]`.
pub fn gl_fixed<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gl32();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Adaptive bisection on top of [`gl_fixed`]: a cell is accepted once the
/// whole-cell estimate and the sum of its two halves differ by less than
/// `rel * (1 + |estimate|)`.
pub fn adaptive_gl<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let whole = gl_fixed(f, a, b);
    adaptive_gl_rec(f, a, b, whole, rel, 0)
}

fn adaptive_gl_rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, rel: f64, depth: u32) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = gl_fixed(f, a, mid);
    let right = gl_fixed(f, mid, b);
    let refined = left + right;
    if !refined.is_finite() {
        return Err(Error::Divergence(format!("non-finite integrand on [{a}, {b}]")));
    }
    if (refined - whole).abs() <= rel * (1.0 + refined.abs()) {
        return Ok(refined);
    }
    if depth >= MAX_BISECTION_DEPTH || mid <= a || mid >= b {
        return Err(Error::IterationLimit(format!(
            "Gauss-Legendre bisection did not settle on [{a}, {b}]"
        )));
    }
    Ok(adaptive_gl_rec(f, a, mid, left, rel, depth + 1)? + adaptive_gl_rec(f, mid, b, right, rel, depth + 1)?)
}

/// Integral over `(0, b]` of an integrand that behaves like `c * t^exponent`
/// near the origin, with `exponent > -1`.
///
/// Cells shrink geometrically by 1/4 toward zero. Grading stops once the
/// leading-power remainder over the innermost cell `(0, h]`, namely
/// `h * F(h) / (exponent + 1)`, falls below `tol / 10`, or once `h` reaches
/// a floor of `1e-14 * b`. The remainder is then added analytically.
pub fn graded_toward_zero<F: Fn(f64) -> f64>(f: &F, b: f64, exponent: f64, tol: f64, rel: f64) -> Result<f64> {
    if exponent <= -1.0 {
        return Err(Error::Divergence(format!(
            "integrand ~ t^{exponent} is not integrable at 0"
        )));
    }
    let mut hi = b;
    let mut total = 0.0;
    let floor = 1e-14 * b;
    loop {
        let lo = 0.25 * hi;
        total += adaptive_gl(f, lo, hi, rel)?;
        hi = lo;
        let remainder = hi * f(hi) / (exponent + 1.0);
        if !remainder.is_finite() {
            return Err(Error::Divergence(format!("integrand is not finite at t = {hi}")));
        }
        if remainder.abs() < 0.1 * tol || hi < floor {
            return Ok(total + remainder);
        }
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One Gauss–Kronrod 7/15 panel: (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(center - dx) + f(center + dx);
        resk += WGK[j] * fsum;
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }
    (resk * half, ((resk - resg) * half).abs())
}

/// Globally adaptive Gauss–Kronrod integration: the panel with the largest
/// error estimate is split until the summed estimate meets
/// `max(abs_tol, rel_tol * |I|)`.
pub fn adaptive_gk<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (v, e) = gk15(f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::Divergence(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if panels.len() >= max_panels {
            return Err(Error::IterationLimit(format!(
                "Gauss-Kronrod panel budget exhausted on [{a}, {b}] (error {err:e})"
            )));
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("at least one panel");
        let (pa, pb, _, _) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            return Ok(total);
        }
        let (lv, le) = gk15(f, pa, mid);
        let (rv, re) = gk15(f, mid, pb);
        panels.push((pa, mid, lv, le));
        panels.push((mid, pb, rv, re));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_weights_sum_to_two() {
        let (x, w) = gauss_legendre_rule(32);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn gl_is_exact_for_polynomials_up_to_degree_63() {
        let f = |t: f64| t.powi(62) * 63.0;
        let v = gl_fixed(&f, 0.0, 1.0);
        assert!((v - 1.0).abs() < 1e-13, "{v}");
    }

    #[test]
    fn adaptive_gl_sine_arch() {
        let v = adaptive_gl(&f64::sin, 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn graded_handles_inverse_square_root() {
        // \int_0^1 t^{-1/2} dt = 2
        let f = |t: f64| t.powf(-0.5);
        let v = graded_toward_zero(&f, 1.0, -0.5, 1e-12, 1e-13).unwrap();
        assert!((v - 2.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn graded_handles_exponent_near_minus_one() {
        // \int_0^1 t^{-0.999} dt = 1000
        let f = |t: f64| t.powf(-0.999);
        let v = graded_toward_zero(&f, 1.0, -0.999, 1e-9, 1e-13).unwrap();
        assert!((v - 1000.0).abs() < 1e-7, "{v}");
    }

    #[test]
    fn graded_rejects_non_integrable() {
        let f = |t: f64| 1.0 / t;
        assert!(matches!(
            graded_toward_zero(&f, 1.0, -1.0, 1e-9, 1e-12),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn gk_matches_closed_forms() {
        let v = adaptive_gk(&|t: f64| (-t).exp() * t.sin(), 0.0, PI, 1e-14, 1e-14, 1000).unwrap();
        assert!((v - 0.5 * (1.0 + (-PI).exp())).abs() < 1e-13);
        let v = adaptive_gk(&|t: f64| t.sqrt(), 0.0, 1.0, 1e-12, 1e-12, 1000).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }
}
