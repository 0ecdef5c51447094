use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declared monotonicity of the coefficient φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    StrictlyIncreasing,
    Increasing,
    Constant,
    Decreasing,
    StrictlyDecreasing,
    None,
}

impl Monotonicity {
    pub fn is_increasing(self) -> bool {
        matches!(
            self,
            Monotonicity::StrictlyIncreasing | Monotonicity::Increasing | Monotonicity::Constant
        )
    }

    pub fn is_decreasing(self) -> bool {
        matches!(
            self,
            Monotonicity::StrictlyDecreasing | Monotonicity::Decreasing | Monotonicity::Constant
        )
    }

    pub fn is_strict(self) -> bool {
        matches!(
            self,
            Monotonicity::StrictlyIncreasing | Monotonicity::StrictlyDecreasing
        )
    }
}

/// Known limiting behaviour of φ, used by the oscillation classifier in
/// place of sampling when present.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiAsymptotics {
    /// lim t²φ(t) as t → ∞; may be +∞.
    pub limit_t2phi_at_infinity: f64,
    /// lim t²φ(t) as t → 0+.
    pub limit_t2phi_at_zero: f64,
    /// Whether ∫^∞ φ diverges.
    pub integral_diverges: bool,
}

type PhiFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The coefficient φ of the normal form u″ + φ(t)u = 0.
#[derive(Clone)]
pub struct PhiSpec {
    evaluator: PhiFn,
    pub monotonicity: Monotonicity,
    pub asymptotics: Option<PhiAsymptotics>,
    pub label: String,
}

impl fmt::Debug for PhiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiSpec")
            .field("label", &self.label)
            .field("monotonicity", &self.monotonicity)
            .field("asymptotics", &self.asymptotics)
            .finish()
    }
}

impl PhiSpec {
    pub fn new<F>(
        label: impl Into<String>,
        evaluator: F,
        monotonicity: Monotonicity,
        asymptotics: Option<PhiAsymptotics>,
    ) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        PhiSpec {
            evaluator: Arc::new(evaluator),
            monotonicity,
            asymptotics,
            label: label.into(),
        }
    }

    /// φ ≡ c.
    pub fn constant(c: f64) -> Self {
        PhiSpec::new(
            format!("const({c})"),
            move |_| c,
            Monotonicity::Constant,
            Some(PhiAsymptotics {
                limit_t2phi_at_infinity: if c > 0.0 {
                    f64::INFINITY
                } else if c < 0.0 {
                    f64::NEG_INFINITY
                } else {
                    0.0
                },
                limit_t2phi_at_zero: 0.0,
                integral_diverges: c > 0.0,
            }),
        )
    }

    /// φ(t) = 1 + (1 − 4ν²)/(4t²), the coefficient satisfied by √t J_ν(t)
    /// and √t Y_ν(t).
    pub fn bessel(nu: f64) -> Self {
        let c = 0.25 * (1.0 - 4.0 * nu * nu);
        let monotonicity = if c == 0.0 {
            Monotonicity::Constant
        } else if c < 0.0 {
            Monotonicity::StrictlyIncreasing
        } else {
            Monotonicity::StrictlyDecreasing
        };
        PhiSpec::new(
            format!("bessel({nu})"),
            move |t| if c == 0.0 { 1.0 } else { 1.0 + c / (t * t) },
            monotonicity,
            Some(PhiAsymptotics {
                limit_t2phi_at_infinity: f64::INFINITY,
                limit_t2phi_at_zero: c,
                integral_diverges: true,
            }),
        )
    }

    /// φ(t) = (α²t^{2α} + (1 − 4α²ν²)/4)/t², satisfied by √t J_ν(t^α).
    pub fn scaled_bessel(nu: f64, alpha: f64) -> Self {
        let c = 0.25 * (1.0 - 4.0 * alpha * alpha * nu * nu);
        let a2 = alpha * alpha;
        let monotonicity = if alpha > 1.0 && alpha * nu.abs() >= 0.5 {
            Monotonicity::StrictlyIncreasing
        } else {
            Monotonicity::None
        };
        PhiSpec::new(
            format!("scaled_bessel({nu},{alpha})"),
            move |t| (a2 * t.powf(2.0 * alpha) + c) / (t * t),
            monotonicity,
            Some(PhiAsymptotics {
                limit_t2phi_at_infinity: f64::INFINITY,
                limit_t2phi_at_zero: c,
                integral_diverges: alpha >= 0.5,
            }),
        )
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.evaluator)(t)
    }

    /// Checks the declared monotonicity on 200 seeded random pairs drawn
    /// log-uniformly from `[lo, hi]`. Returns the first contradicting pair.
    pub fn spot_check_monotonicity(&self, lo: f64, hi: f64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let (llo, lhi) = (lo.ln(), hi.ln());
        for _ in 0..200 {
            let a = (llo + (lhi - llo) * rng.gen::<f64>()).exp();
            let b = (llo + (lhi - llo) * rng.gen::<f64>()).exp();
            let (t1, t2) = if a < b { (a, b) } else { (b, a) };
            if t1 == t2 {
                continue;
            }
            let (p1, p2) = (self.eval(t1), self.eval(t2));
            if !p1.is_finite() || !p2.is_finite() {
                return Err(Error::Precondition(format!("phi is not finite on [{t1}, {t2}]")));
            }
            let slack = 1e-12 * p1.abs().max(p2.abs());
            let bad = match self.monotonicity {
                Monotonicity::StrictlyIncreasing => p2 <= p1,
                Monotonicity::Increasing => p2 < p1 - slack,
                Monotonicity::Constant => (p2 - p1).abs() > slack,
                Monotonicity::Decreasing => p2 > p1 + slack,
                Monotonicity::StrictlyDecreasing => p2 >= p1,
                Monotonicity::None => false,
            };
            if bad {
                return Err(Error::Precondition(format!(
                    "phi declared {:?} but phi({t1}) = {p1}, phi({t2}) = {p2}",
                    self.monotonicity
                )));
            }
        }
        Ok(())
    }
}
