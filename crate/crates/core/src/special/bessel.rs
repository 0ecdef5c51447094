//! Bessel functions of real order and real argument.
//!
//! J_ν is evaluated in three zones: the ascending power series for small
//! arguments, Hankel's asymptotic expansion (optimally truncated) for large
//! ones, and in between Steed's continued-fraction method combined with
//! three-term recurrence. Negative orders in the middle zone go through the
//! reflection J_{−μ} = cos(μπ)J_μ − sin(μπ)Y_μ.

use std::f64::consts::PI;

use super::{gamma, EvalResult, Method};
use crate::error::{domain, Error, Result};

/// Arguments at or below this use the power series.
pub const SERIES_CUTOFF: f64 = 10.0;

/// Smallest argument at which Hankel's expansion is ever used.
pub const ASYMPTOTIC_FLOOR: f64 = 25.0;

/// Largest |ν| accepted by the public entry points.
pub const MAX_ORDER: f64 = 60.0;

const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = 1e-300;
const STEED_MAXIT: usize = 100_000;
const SERIES_MAX_TERMS: usize = 120;

/// sin(πx), exact at integers and accurate near them.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let s = (PI * (x - n)).sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

/// cos(πx), exact at half-integers and accurate near them.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / gamma(x).expect("pole excluded above")
    }
}

fn asymptotic_threshold(nu: f64) -> f64 {
    ASYMPTOTIC_FLOOR.max(1.5 * nu * nu)
}

/// Power series Σ (−1)^m (t/2)^{2m+ν} / (m! Γ(ν+m+1)), with `sign = -1`,
/// or the modified series when `sign = +1`. Returns (value, error estimate).
fn power_series(nu: f64, t: f64, sign: f64) -> (f64, f64) {
    let half = 0.5 * t;
    let mut term = (nu * half.ln()).exp() * rgamma(nu + 1.0);
    if term == 0.0 {
        // negative integer order: leading coefficients vanish
        return (0.0, 0.0);
    }
    let q = sign * half * half;
    let mut sum = term;
    let mut weighted_abs = term.abs();
    for m in 1..SERIES_MAX_TERMS {
        let mf = m as f64;
        term *= q / (mf * (mf + nu));
        sum += term;
        weighted_abs += term.abs() * (mf + 1.0);
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    (sum, EPS * weighted_abs + 4.0 * EPS * sum.abs())
}

/// Hankel's expansion: returns (J_ν(t), Y_ν(t), error estimate).
fn hankel_asymptotic(nu: f64, t: f64) -> (f64, f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = 1.0_f64;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (mu - odd * odd) / (kf * 8.0 * t);
        if next.abs() > term.abs() {
            // the expansion starts to diverge; optimal truncation
            last = term.abs();
            break;
        }
        term = next;
        // P collects even k with sign (−1)^{k/2}; Q collects odd k with (−1)^{(k−1)/2}
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        last = term.abs();
        if term == 0.0 || term.abs() < 1e-17 {
            break;
        }
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (sp, cp) = phase.sin_cos();
    let (st, ct) = t.sin_cos();
    // χ = t − phase
    let cos_chi = ct * cp + st * sp;
    let sin_chi = st * cp - ct * sp;
    let amp = (2.0 / (PI * t)).sqrt();
    let j = amp * (p * cos_chi - q * sin_chi);
    let y = amp * (p * sin_chi + q * cos_chi);
    let err = amp * (last + 8.0 * EPS * (1.0 + p.abs() + q.abs()));
    (j, y, err)
}

/// Steed's method for J_ν(x), Y_ν(x), ν ≥ 0, x ≥ 2.
fn steed_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    debug_assert!(nu >= 0.0 && x >= 2.0);
    let nl = (nu - x + 1.5).floor().max(0.0) as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν by the modified Lentz method
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..STEED_MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::IterationLimit(format!("CF1 for J_{nu}({x}) did not converge")));
    }

    // downward recurrence to order μ
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J'_μ + iY'_μ)/(J_μ + iY_μ)
    let mut a = 0.25 - xmu2;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    let mut converged = false;
    for i in 1..STEED_MAXIT {
        a += (2 * i) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::IterationLimit(format!("CF2 for J_{nu}({x}) did not converge")));
    }
    let gam = (p - f) / q;
    let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
    let mut rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = xmu * xi * rymu - rymup;
    let scale = rjmu / rjl;
    let rj = rjl1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok((rj, rymu))
}

fn steed_error(x: f64, value: f64) -> f64 {
    // CF1 needs about x iterations; rounding grows roughly linearly with them
    let envelope = (2.0 / (PI * x)).sqrt();
    (100.0 + 100.0 * x) * EPS * envelope.max(value.abs())
}

/// J_ν(t) for any real non-integer-negative ν and t ≥ 0 (no order bound).
pub(crate) fn j_any(nu: f64, t: f64) -> Result<EvalResult> {
    if t.is_nan() || nu.is_nan() {
        return domain("NaN argument to J");
    }
    if t < 0.0 {
        return domain(format!("J_nu requires t >= 0, got {t}"));
    }
    if t == 0.0 {
        return if nu == 0.0 {
            Ok(EvalResult::new(1.0, 0.0, Method::Series))
        } else if nu > 0.0 {
            Ok(EvalResult::new(0.0, 0.0, Method::Series))
        } else {
            domain(format!("J_{nu} diverges at t = 0"))
        };
    }
    if t <= SERIES_CUTOFF {
        let (v, e) = power_series(nu, t, -1.0);
        return Ok(EvalResult::new(v, e, Method::Series));
    }
    if t >= asymptotic_threshold(nu) {
        let (j, _, e) = hankel_asymptotic(nu, t);
        return Ok(EvalResult::new(j, e, Method::Asymptotic));
    }
    if nu >= 0.0 {
        let (j, _) = steed_jy(nu, t)?;
        Ok(EvalResult::new(j, steed_error(t, j), Method::Recurrence))
    } else {
        let mu = -nu;
        let (jm, ym) = steed_jy(mu, t)?;
        let v = cos_pi(mu) * jm - sin_pi(mu) * ym;
        Ok(EvalResult::new(v, 2.0 * steed_error(t, v), Method::Reflection))
    }
}

/// Bessel function of the first kind J_ν(t), ν > −1, t ≥ 0.
pub fn bessel_j(nu: f64, t: f64) -> Result<EvalResult> {
    if !(nu > -1.0) || nu > MAX_ORDER {
        return domain(format!("J_nu needs -1 < nu <= {MAX_ORDER}, got {nu}"));
    }
    j_any(nu, t)
}

/// Derivative J′_ν(t) = (ν/t)J_ν(t) − J_{ν+1}(t), t > 0.
pub fn bessel_j_prime(nu: f64, t: f64) -> Result<EvalResult> {
    if !(t > 0.0) {
        return domain(format!("J'_nu is evaluated for t > 0, got {t}"));
    }
    let j = bessel_j(nu, t)?;
    let j1 = j_any(nu + 1.0, t)?;
    Ok(EvalResult::new(
        nu / t * j.value - j1.value,
        (nu / t).abs() * j.abs_error_estimate + j1.abs_error_estimate,
        j.method,
    ))
}

/// The Hankel kernel √t J_ν(t). Returns the limiting value at t = 0
/// (0 for ν > −1/2, √(2/π) for ν = −1/2, +∞ below).
pub fn sqrt_bessel_j(nu: f64, t: f64) -> f64 {
    if t == 0.0 {
        return if nu > -0.5 {
            0.0
        } else if nu == -0.5 {
            (2.0 / PI).sqrt()
        } else {
            f64::INFINITY
        };
    }
    match j_any(nu, t) {
        Ok(r) => t.sqrt() * r.value,
        Err(_) => f64::NAN,
    }
}

/// d/dt [√t J_ν(t)] for t > 0.
pub fn sqrt_bessel_j_prime(nu: f64, t: f64) -> f64 {
    let j = j_any(nu, t).map(|r| r.value).unwrap_or(f64::NAN);
    let j1 = j_any(nu + 1.0, t).map(|r| r.value).unwrap_or(f64::NAN);
    let s = t.sqrt();
    j / (2.0 * s) + s * (nu / t * j - j1)
}

/// Bessel function of the second kind through
/// Y_ν = (cos νπ J_ν − J_{−ν}) / sin νπ, for non-integer ν and t > 0.
pub fn bessel_y(nu: f64, t: f64) -> Result<EvalResult> {
    if !(t > 0.0) {
        return domain(format!("Y_nu requires t > 0, got {t}"));
    }
    if !(nu.abs() <= 30.0) {
        return domain(format!("Y_nu supports |nu| <= 30, got {nu}"));
    }
    let s = sin_pi(nu);
    if s.abs() <= 1e-8 {
        return domain(format!("Y_nu is only available for non-integer order, got nu = {nu}"));
    }
    let c = cos_pi(nu);
    let jp = j_any(nu, t)?;
    let jm = j_any(-nu, t)?;
    let value = (c * jp.value - jm.value) / s;
    let err = (c.abs() * jp.abs_error_estimate + jm.abs_error_estimate) / s.abs()
        + EPS * (c * jp.value).abs().max(jm.value.abs()) / s.abs();
    Ok(EvalResult::new(value, err, jm.method))
}

/// Modified Bessel function I_ν(t) by its power series, ν > −1, t ≥ 0.
pub fn bessel_i(nu: f64, t: f64) -> Result<EvalResult> {
    if !(nu > -1.0) || nu > MAX_ORDER {
        return domain(format!("I_nu needs -1 < nu <= {MAX_ORDER}, got {nu}"));
    }
    i_any(nu, t)
}

fn i_any(nu: f64, t: f64) -> Result<EvalResult> {
    if !(t >= 0.0) {
        return domain(format!("I_nu requires t >= 0, got {t}"));
    }
    if t == 0.0 {
        return if nu == 0.0 {
            Ok(EvalResult::new(1.0, 0.0, Method::Series))
        } else if nu > 0.0 {
            Ok(EvalResult::new(0.0, 0.0, Method::Series))
        } else {
            domain(format!("I_{nu} diverges at t = 0"))
        };
    }
    let (v, e) = power_series(nu, t, 1.0);
    Ok(EvalResult::new(v, e, Method::Series))
}

/// Steed/Temme continued fraction for K_ν(x), |ν| ≤ 1/2 reduced order
/// followed by upward recurrence; x ≥ 2.
fn steed_k(nu: f64, x: f64) -> Result<f64> {
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 1..STEED_MAXIT {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() <= EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::IterationLimit(format!("CF2 for K_{nu}({x}) did not converge")));
    }
    h *= a1;
    let mut rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let mut rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    Ok(rkmu)
}

/// Modified Bessel function K_ν(t), non-integer ν, t > 0.
///
/// Below t = 2 the reflection quotient π(I_{−ν} − I_ν)/(2 sin νπ) is used;
/// above it the quotient cancels badly and Steed's continued fraction
/// takes over.
pub fn bessel_k(nu: f64, t: f64) -> Result<EvalResult> {
    if !(t > 0.0) {
        return domain(format!("K_nu requires t > 0, got {t}"));
    }
    let nu = nu.abs();
    if nu > 30.0 {
        return domain(format!("K_nu supports |nu| <= 30, got {nu}"));
    }
    let s = sin_pi(nu);
    if s.abs() <= 1e-8 {
        return domain(format!("K_nu is only available for non-integer order, got nu = {nu}"));
    }
    if t < 2.0 {
        let ip = i_any(nu, t)?;
        let im = i_any(-nu, t)?;
        let v = PI * (im.value - ip.value) / (2.0 * s);
        let e = PI * (im.abs_error_estimate + ip.abs_error_estimate) / (2.0 * s.abs());
        Ok(EvalResult::new(v, e, Method::Reflection))
    } else {
        let v = steed_k(nu, t)?;
        Ok(EvalResult::new(v, 1e-14 * v.abs(), Method::Recurrence))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_origin_is_one() {
        let r = bessel_j(0.0, 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.method, Method::Series);
    }

    #[test]
    fn j_half_vanishes_at_pi() {
        let r = bessel_j(0.5, PI).unwrap();
        assert!(r.value.abs() < 1e-15, "{}", r.value);
    }

    #[test]
    fn negative_order_at_origin_is_domain_error() {
        assert!(matches!(bessel_j(-0.25, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn order_out_of_range_is_rejected() {
        assert!(bessel_j(-1.0, 1.0).is_err());
        assert!(bessel_j(-1.5, 1.0).is_err());
    }

    #[test]
    fn y_near_integer_order_is_domain_error() {
        assert!(matches!(bessel_y(1.0 + 1e-12, 1.0), Err(Error::Domain(_))));
        assert!(bessel_y(0.5 + 1e-12, 1.0).is_ok());
    }

    #[test]
    fn k_integer_order_is_domain_error() {
        assert!(matches!(bessel_k(1.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn trig_pi_helpers_are_exact_at_lattice_points() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(cos_pi(2.5), 0.0);
        assert_eq!(cos_pi(1.0), -1.0);
    }

    #[test]
    fn method_tags_follow_zones() {
        assert_eq!(bessel_j(1.0, 5.0).unwrap().method, Method::Series);
        assert_eq!(bessel_j(1.0, 15.0).unwrap().method, Method::Recurrence);
        assert_eq!(bessel_j(-0.3, 15.0).unwrap().method, Method::Reflection);
        assert_eq!(bessel_j(1.0, 100.0).unwrap().method, Method::Asymptotic);
    }
}
