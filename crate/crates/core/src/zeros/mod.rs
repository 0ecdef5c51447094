//! Positive zeros of the transform kernels, in ascending order.

mod refine;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use refine::refine_zero;

use crate::error::{domain, Error, Result};
use crate::special::{bessel_j, bessel_y};
use crate::transforms::KernelSpec;

const SCAN_STEP: f64 = PI / 8.0;
const SCAN_BUDGET: usize = 1_000_000;

/// Leading McMahon term (k + ν/2 − 1/4)π.
pub fn mcmahon_estimate(nu: f64, k: usize) -> f64 {
    (k as f64 + 0.5 * nu - 0.25) * PI
}

/// Two-correction McMahon value, used to place brackets for large zeros.
fn mcmahon_corrected(nu: f64, k: usize) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let beta = mcmahon_estimate(nu, k);
    if k <= 5 || beta < mu.max(10.0) {
        return None;
    }
    let b8 = 8.0 * beta;
    Some(beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3)))
}

fn j_value(nu: f64, t: f64) -> f64 {
    bessel_j(nu, t).map(|r| r.value).unwrap_or(f64::NAN)
}

/// Scans forward from `start` in steps of π/8 (in units of `u`'s argument)
/// until `u` changes sign, then refines.
fn scan_next<F: Fn(f64) -> f64>(u: &F, start: f64, tol: f64) -> Result<f64> {
    let mut a = start;
    let mut ua = u(a);
    for _ in 0..SCAN_BUDGET {
        let b = a + SCAN_STEP;
        let ub = u(b);
        if !ub.is_finite() {
            return Err(Error::Bracket(format!("kernel not finite at {b}")));
        }
        if ub == 0.0 {
            return Ok(b);
        }
        if ua * ub < 0.0 {
            return refine_zero(u, (a, b), tol);
        }
        a = b;
        ua = ub;
    }
    Err(Error::IterationLimit(format!(
        "no sign change within {SCAN_BUDGET} scan steps from {start}"
    )))
}

/// k-th positive zero j_{ν,k} of J_ν, 1-based.
pub fn bessel_j_zero(nu: f64, k: usize, tol: f64) -> Result<f64> {
    if k == 0 {
        return domain("zero index is 1-based");
    }
    bessel_j_zeros(nu, k, tol).map(|z| z[k - 1])
}

/// The first `n` positive zeros of J_ν.
pub fn bessel_j_zeros(nu: f64, n: usize, tol: f64) -> Result<Vec<f64>> {
    let mut cursor = ZeroCursor::new(KernelSpec::bessel_sqrt(nu)?, tol)?;
    cursor.ensure(n)?;
    Ok(cursor.zeros)
}

/// Zeros of a kernel produced on demand, each one bracketed either from the
/// McMahon expansion or by scanning from the previous zero.
#[derive(Debug, Clone)]
pub struct ZeroCursor {
    kernel: KernelSpec,
    tol: f64,
    zeros: Vec<f64>,
}

impl ZeroCursor {
    pub fn new(kernel: KernelSpec, tol: f64) -> Result<Self> {
        if !(tol >= 1e-13) {
            return domain(format!("zero tolerance must be >= 1e-13, got {tol}"));
        }
        if let KernelSpec::Cosine = kernel {
            return domain("cosine kernel zeros are not enumerated; use the sine route");
        }
        Ok(ZeroCursor {
            kernel,
            tol,
            zeros: Vec::new(),
        })
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    /// Makes at least `n` zeros available.
    pub fn ensure(&mut self, n: usize) -> Result<()> {
        while self.zeros.len() < n {
            let k = self.zeros.len() + 1;
            let z = self.locate(k)?;
            if let Some(&last) = self.zeros.last() {
                if z - last < 10.0 * self.tol {
                    return Err(Error::Bracket(format!(
                        "zeros {last} and {z} coincide within 10*tol: double root"
                    )));
                }
            }
            self.zeros.push(z);
        }
        Ok(())
    }

    fn locate(&self, k: usize) -> Result<f64> {
        let tol = self.tol;
        let prev = self.zeros.last().copied();
        match &self.kernel {
            KernelSpec::Sine => Ok(k as f64 * PI),
            KernelSpec::Cosine => unreachable!("rejected at construction"),
            KernelSpec::BesselSqrt { nu } => bessel_zero_after(*nu, k, prev, tol),
            KernelSpec::ScaledBessel { nu, alpha } => {
                // Zeros of J_ν(t^α) are j_{ν,k}^{1/α}; refine j in its own
                // variable, then map.
                let j = bessel_zero_after(*nu, k, prev.map(|p| p.powf(*alpha)), tol)?;
                Ok(j.powf(1.0 / alpha))
            }
            KernelSpec::NeumannSqrt { nu } => {
                let nu = *nu;
                let y = |t: f64| bessel_y(nu, t).map(|r| r.value).unwrap_or(f64::NAN);
                let start = prev.map_or(1e-6, |p| p + SCAN_STEP);
                scan_next(&y, start, tol)
            }
            KernelSpec::Ode(o) => {
                let roots = o.trajectory().detected_roots();
                roots.get(k - 1).copied().ok_or_else(|| {
                    Error::Span(format!(
                        "ODE kernel trajectory ends at {} with {} roots; zero {k} requested",
                        o.trajectory().span().1,
                        roots.len()
                    ))
                })
            }
        }
    }
}

fn bessel_zero_after(nu: f64, k: usize, prev: Option<f64>, tol: f64) -> Result<f64> {
    let j = |t: f64| j_value(nu, t);
    if let Some(z) = mcmahon_corrected(nu, k) {
        let bracket = (z - 0.25 * PI, z + 0.25 * PI);
        if j(bracket.0) * j(bracket.1) < 0.0 && prev.is_none_or(|p| bracket.0 > p) {
            return refine_zero(j, bracket, tol);
        }
    }
    let start = prev.map_or(nu.max(1e-6), |p| p + SCAN_STEP);
    scan_next(&j, start, tol)
}

/// Zeros ζ_1 < … < ζ_n of a kernel with the verification data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSequence {
    pub kernel: String,
    pub zeros: Vec<f64>,
    pub refinement_tolerance: f64,
}

impl ZeroSequence {
    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    /// Spacings ζ_{k+1} − ζ_k.
    pub fn spacings(&self) -> Vec<f64> {
        self.zeros.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Checks ordering, sign change at ±10·tol and the simplicity proxy.
    pub fn verify(&self, kernel: &KernelSpec) -> Result<()> {
        if self.zeros.windows(2).any(|w| !(w[0] < w[1])) || self.zeros.iter().any(|&z| !(z > 0.0)) {
            return Err(Error::Bracket("zeros are not positive and increasing".into()));
        }
        let delta = 10.0 * self.refinement_tolerance;
        let slope = |z: f64| {
            let h = 1e-6 * z.max(1.0);
            (kernel.eval(z + h) - kernel.eval(z - h)) / (2.0 * h)
        };
        let first_slope = self.zeros.first().map_or(0.0, |&z| slope(z).abs());
        for &z in &self.zeros {
            let d = delta.max(4.0 * f64::EPSILON * z);
            if !(kernel.eval(z - d) * kernel.eval(z + d) < 0.0) {
                return Err(Error::Bracket(format!("no sign change across zero {z}")));
            }
            if !(slope(z).abs() > 1e-8 * first_slope.max(1.0)) {
                return Err(Error::Bracket(format!("zero {z} does not look simple")));
            }
        }
        Ok(())
    }
}

/// The first `n` positive zeros of `kernel`.
pub fn enumerate_zeros(kernel: &KernelSpec, n: usize, tol: f64) -> Result<ZeroSequence> {
    let mut cursor = ZeroCursor::new(kernel.clone(), tol)?;
    cursor.ensure(n)?;
    let seq = ZeroSequence {
        kernel: kernel.label(),
        zeros: cursor.zeros,
        refinement_tolerance: tol,
    };
    seq.verify(kernel)?;
    Ok(seq)
}
