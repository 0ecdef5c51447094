//! Sampled checks of the qualitative hypotheses on profiles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quad::graded_toward_zero;

/// Samples drawn per monotonicity or convexity check.
pub const SAMPLES: usize = 500;
/// Lower end of the sampling window.
pub const T_MIN: f64 = 1e-4;
/// Upper end of the sampling window (clipped to the support).
pub const T_MAX: f64 = 100.0;
/// Points used to decide that f does not vanish identically.
pub const NONZERO_POINTS: usize = 64;
/// Doublings used to probe the limit at infinity.
pub const LIMIT_DOUBLINGS: i32 = 200;

const SEED: u64 = 0x5eed_0100;

/// Outcome of one sampled check: pass flag, a human-readable account and
/// the numbers behind it (sample points or integral values).
#[derive(Debug, Clone)]
pub struct Outcome {
    pub pass: bool,
    pub evidence: String,
    pub data: Vec<f64>,
}

impl Outcome {
    fn pass(evidence: String, data: Vec<f64>) -> Self {
        Outcome {
            pass: true,
            evidence,
            data,
        }
    }

    fn fail(evidence: String, data: Vec<f64>) -> Self {
        Outcome {
            pass: false,
            evidence,
            data,
        }
    }
}

fn window(hi: f64) -> (f64, f64) {
    (T_MIN.ln(), hi.clamp(T_MIN * 2.0, T_MAX).ln())
}

fn ordered_pairs(hi: f64, salt: u64) -> Vec<(f64, f64)> {
    let (llo, lhi) = window(hi);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    (0..SAMPLES)
        .filter_map(|_| {
            let a = (llo + (lhi - llo) * rng.gen::<f64>()).exp();
            let b = (llo + (lhi - llo) * rng.gen::<f64>()).exp();
            match a.partial_cmp(&b)? {
                std::cmp::Ordering::Less => Some((a, b)),
                std::cmp::Ordering::Greater => Some((b, a)),
                std::cmp::Ordering::Equal => None,
            }
        })
        .collect()
}

/// h ≥ 0 at 500 seeded points of [1e-4, min(hi, 100)].
pub fn nonnegative(h: &dyn Fn(f64) -> f64, hi: f64) -> Outcome {
    let (llo, lhi) = window(hi);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for _ in 0..SAMPLES {
        let t = (llo + (lhi - llo) * rng.gen::<f64>()).exp();
        let v = h(t);
        if !(v >= 0.0) {
            return Outcome::fail(format!("value {v:e} at t = {t:e}"), vec![t, v]);
        }
    }
    Outcome::pass(format!("{SAMPLES} samples on [{T_MIN:e}, {:e}]", lhi.exp()), vec![])
}

/// h(t₁) ≥ h(t₂) (strictly when `strict`) for 500 seeded pairs t₁ < t₂.
pub fn decreasing(h: &dyn Fn(f64) -> f64, hi: f64, strict: bool) -> Outcome {
    for (t1, t2) in ordered_pairs(hi, if strict { 2 } else { 3 }) {
        let (a, b) = (h(t1), h(t2));
        let slack = if strict { 0.0 } else { 1e-12 * a.abs().max(b.abs()) };
        let bad = if strict { !(b < a) } else { !(b <= a + slack) };
        if bad {
            return Outcome::fail(format!("h({t1:e}) = {a:e}, h({t2:e}) = {b:e}"), vec![t1, a, t2, b]);
        }
    }
    Outcome::pass(
        format!("{SAMPLES} pairs on [{T_MIN:e}, {:e}]", window(hi).1.exp()),
        vec![],
    )
}

/// Midpoint convexity h((t₁+t₂)/2) ≤ (h(t₁)+h(t₂))/2 on 500 seeded pairs.
pub fn convex(h: &dyn Fn(f64) -> f64, hi: f64) -> Outcome {
    for (t1, t2) in ordered_pairs(hi, 4) {
        let m = 0.5 * (t1 + t2);
        let (a, b, c) = (h(t1), h(t2), h(m));
        let chord = 0.5 * (a + b);
        if !(c <= chord + 1e-10 * a.abs().max(b.abs())) {
            return Outcome::fail(
                format!("h({m:e}) = {c:e} above chord {chord:e} of [{t1:e}, {t2:e}]"),
                vec![t1, m, t2, c, chord],
            );
        }
    }
    Outcome::pass(
        format!("{SAMPLES} triples on [{T_MIN:e}, {:e}]", window(hi).1.exp()),
        vec![],
    )
}

/// max h > 0 over 64 points of the support.
pub fn not_identically_zero(h: &dyn Fn(f64) -> f64, support: f64) -> Outcome {
    let pts: Vec<f64> = if support.is_finite() {
        (1..=NONZERO_POINTS)
            .map(|i| support * i as f64 / NONZERO_POINTS as f64)
            .collect()
    } else {
        let (llo, lhi) = window(support);
        (0..NONZERO_POINTS)
            .map(|i| (llo + (lhi - llo) * i as f64 / (NONZERO_POINTS - 1) as f64).exp())
            .collect()
    };
    let max = pts.iter().map(|&t| h(t)).fold(f64::NEG_INFINITY, f64::max);
    let msg = format!("max over {NONZERO_POINTS} support points = {max:e}");
    if max > 0.0 {
        Outcome::pass(msg, vec![max])
    } else {
        Outcome::fail(msg, vec![max])
    }
}

/// Samples h(2^i), i = 0..200, and asks that |h| drop below 1e-6·|h(1)| and
/// stay there.
pub fn tends_to_zero(h: &dyn Fn(f64) -> f64) -> (bool, String) {
    let reference = h(1.0).abs();
    if !reference.is_finite() {
        return (false, format!("h(1) = {reference}"));
    }
    let threshold = 1e-6 * reference;
    let mut below_from = None;
    for i in 0..=LIMIT_DOUBLINGS {
        let t = 2f64.powi(i);
        let v = h(t).abs();
        if !v.is_finite() {
            return (false, format!("h({t:e}) is not finite"));
        }
        if v <= threshold {
            below_from.get_or_insert(t);
        } else {
            below_from = None;
        }
    }
    match below_from {
        Some(t) => (
            true,
            format!("|h| <= 1e-6 |h(1)| from t = {t:e} through 2^{LIMIT_DOUBLINGS}"),
        ),
        None => (false, format!("|h(2^i)| stays above 1e-6 |h(1)| = {threshold:e}")),
    }
}

/// ∫₀¹ t^q h(t) dt for h ~ t^{−σ}: exponent arithmetic first, then the
/// graded quadrature.
pub fn integrable_near_zero(h: &dyn Fn(f64) -> f64, q: f64, sigma: f64) -> Outcome {
    let e = q - sigma;
    if e <= -1.0 {
        return Outcome::fail(
            format!("integrand ~ t^{e} with exponent q - sigma = {q} - {sigma} <= -1"),
            vec![e],
        );
    }
    let integrand = |t: f64| t.powf(q) * h(t);
    match graded_toward_zero(&integrand, 1.0, e, 1e-10, 1e-10) {
        Ok(v) if v.is_finite() => Outcome::pass(format!("integral of t^{q} h over (0, 1] = {v:e}"), vec![v]),
        Ok(v) => Outcome::fail(format!("integral is {v}"), vec![]),
        Err(err) => Outcome::fail(format!("integral failed: {err}"), vec![]),
    }
}
