use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation with g = 671/128 and 14 coefficients.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn lanczos_series(x: f64) -> f64 {
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    ser
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Γ(x) for real x off the non-positive integers.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Domain(format!("gamma has a pole at x = {x}")));
    }
    if x.is_nan() {
        return Err(Error::Domain("gamma of NaN".into()));
    }
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π / sin(πx)
        let s = super::sin_pi(x);
        return Ok(PI / (s * gamma(1.0 - x)?));
    }
    if x > 171.6 {
        return Err(Error::Domain(format!("gamma overflows for x = {x}")));
    }
    let t = x + LANCZOS_G;
    let half = t.powf(0.5 * (x + 0.5));
    Ok(SQRT_2PI * lanczos_series(x) / x * half * (half * (-t).exp()))
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if is_pole(x) {
        return Err(Error::Domain(format!("gamma has a pole at x = {x}")));
    }
    if x < 0.5 {
        let s = super::sin_pi(x).abs();
        return Ok(PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    let t = x + LANCZOS_G;
    Ok((x + 0.5) * t.ln() - t + (SQRT_2PI * lanczos_series(x) / x).ln())
}
