use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200;

/// Root of `u` inside a sign-changing bracket.
///
/// Secant steps are taken when they stay inside the bracket and make
/// progress; otherwise the bracket is bisected. After each secant step a
/// probe half a tolerance away is evaluated so that the bracket itself
/// collapses, not just the iterate. The returned point is the midpoint of a
/// final bracket of width at most `tol` and never leaves `[lo, hi]`.
pub fn refine_zero<F: Fn(f64) -> f64>(u: F, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Bracket(format!("empty bracket [{lo}, {hi}]")));
    }
    let mut flo = u(lo);
    let mut fhi = u(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo * fhi < 0.0) {
        return Err(Error::Bracket(format!(
            "no sign change on [{lo}, {hi}]: u = {flo}, {fhi}"
        )));
    }
    let scale = lo.abs().max(hi.abs());
    let tol = tol.max(4.0 * f64::EPSILON * scale);
    let mut last_width = 2.0 * (hi - lo);
    for _ in 0..MAX_ITERATIONS {
        let width = hi - lo;
        if width <= tol {
            return Ok(0.5 * (lo + hi));
        }
        let secant = lo - flo * width / (fhi - flo);
        let use_secant = secant > lo && secant < hi && width <= 0.5 * last_width;
        let x = if use_secant && secant.is_finite() {
            secant
        } else {
            0.5 * (lo + hi)
        };
        last_width = width;
        let fx = u(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if !fx.is_finite() {
            return Err(Error::Bracket(format!("u is not finite at {x}")));
        }
        if flo * fx < 0.0 {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
        if use_secant {
            // Probe just across the secant iterate toward the far end of the
            // bracket that remains.
            let probe = if hi == x { x - 0.45 * tol } else { x + 0.45 * tol };
            if probe > lo && probe < hi {
                let fp = u(probe);
                if fp == 0.0 {
                    return Ok(probe);
                }
                if flo * fp < 0.0 {
                    hi = probe;
                    fhi = fp;
                } else {
                    lo = probe;
                    flo = fp;
                }
            }
        }
    }
    Err(Error::IterationLimit(format!(
        "root refinement stalled on [{lo}, {hi}] after {MAX_ITERATIONS} iterations"
    )))
}
