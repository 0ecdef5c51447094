use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Analytic properties a profile declares about itself. `None` means "not
/// declared"; such properties are sampled when a theorem needs them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Declarations {
    pub nonnegative: Option<bool>,
    pub decreasing: Option<bool>,
    pub strictly_decreasing_on_support: Option<bool>,
    pub convex: Option<bool>,
    /// f vanishes for t > support_upper.
    pub support_upper: f64,
    pub limit_zero_at_infinity: Option<bool>,
}

impl Default for Declarations {
    fn default() -> Self {
        Declarations {
            nonnegative: None,
            decreasing: None,
            strictly_decreasing_on_support: None,
            convex: None,
            support_upper: f64::INFINITY,
            limit_zero_at_infinity: None,
        }
    }
}

/// The profile f(t), t > 0, of a transform.
#[derive(Clone)]
pub struct ProfileFunction {
    pub label: String,
    evaluator: ScalarFn,
    derivative: Option<ScalarFn>,
    second_derivative: Option<ScalarFn>,
    pub declared: Declarations,
    /// σ with f(t) ~ c·t^{−σ} as t → 0+.
    pub singular_exponent: f64,
    /// Points in (0, support_upper) where f or f′ may jump.
    pub breakpoints: Vec<f64>,
}

impl fmt::Debug for ProfileFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileFunction")
            .field("label", &self.label)
            .field("declared", &self.declared)
            .field("singular_exponent", &self.singular_exponent)
            .field("breakpoints", &self.breakpoints)
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl ProfileFunction {
    pub fn new<F>(label: impl Into<String>, evaluator: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ProfileFunction {
            label: label.into(),
            evaluator: Arc::new(evaluator),
            derivative: None,
            second_derivative: None,
            declared: Declarations::default(),
            singular_exponent: 0.0,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn with_second_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.second_derivative = Some(Arc::new(d));
        self
    }

    pub fn with_declarations(mut self, declared: Declarations) -> Self {
        self.declared = declared;
        self
    }

    pub fn with_singular_exponent(mut self, sigma: f64) -> Self {
        self.singular_exponent = sigma;
        self
    }

    pub fn with_breakpoints(mut self, mut points: Vec<f64>) -> Self {
        points.sort_by(f64::total_cmp);
        points.dedup();
        self.breakpoints = points;
        self
    }

    /// f ≡ 0.
    pub fn zero() -> Self {
        ProfileFunction::new("zero", |_| 0.0)
            .with_derivative(|_| 0.0)
            .with_second_derivative(|_| 0.0)
            .with_declarations(Declarations {
                nonnegative: Some(true),
                decreasing: Some(true),
                strictly_decreasing_on_support: Some(false),
                convex: Some(true),
                support_upper: f64::INFINITY,
                limit_zero_at_infinity: Some(true),
            })
    }

    /// f(t), taken as 0 beyond the declared support.
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        if t > self.declared.support_upper {
            0.0
        } else {
            (self.evaluator)(t)
        }
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// f′(t) when a derivative evaluator is attached.
    pub fn derivative(&self, t: f64) -> Option<f64> {
        self.derivative
            .as_ref()
            .map(|d| if t > self.declared.support_upper { 0.0 } else { d(t) })
    }

    pub fn derivative_fn(&self) -> Option<ScalarFn> {
        self.derivative.clone()
    }

    pub fn second_derivative_fn(&self) -> Option<ScalarFn> {
        self.second_derivative.clone()
    }

    pub fn evaluator(&self) -> ScalarFn {
        self.evaluator.clone()
    }

    /// Upper end of the region where f may be nonzero.
    pub fn support_upper(&self) -> f64 {
        self.declared.support_upper
    }

    /// Spot-checks the declared properties on 200 seeded samples drawn
    /// log-uniformly from `[lo, hi]`: points for nonnegativity, pairs for
    /// monotonicity, midpoint triples for convexity.
    pub fn spot_check_declarations(&self, lo: f64, hi: f64) -> Result<()> {
        let hi = hi.min(self.declared.support_upper);
        if !(lo > 0.0 && hi > lo) {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let (llo, lhi) = (lo.ln(), hi.ln());
        let mut draw = || (llo + (lhi - llo) * rng.gen::<f64>()).exp();
        let fail = |what: &str, detail: String| {
            Err(Error::Precondition(format!(
                "profile {} declared {what} but {detail}",
                self.label
            )))
        };
        for _ in 0..200 {
            let (a, b) = (draw(), draw());
            let (t1, t2) = if a < b { (a, b) } else { (b, a) };
            let (f1, f2) = (self.eval(t1), self.eval(t2));
            let slack = 1e-12 * f1.abs().max(f2.abs());
            if self.declared.nonnegative == Some(true) && (f1 < 0.0 || f2 < 0.0) {
                return fail("nonnegative", format!("f({t1}) = {f1}, f({t2}) = {f2}"));
            }
            if self.declared.decreasing == Some(true) && t1 < t2 && f2 > f1 + slack {
                return fail("decreasing", format!("f({t1}) = {f1} < f({t2}) = {f2}"));
            }
            if self.declared.strictly_decreasing_on_support == Some(true) && t1 < t2 && f2 >= f1 {
                return fail("strictly decreasing", format!("f({t1}) = {f1} <= f({t2}) = {f2}"));
            }
            if self.declared.convex == Some(true) && t1 < t2 {
                let m = 0.5 * (t1 + t2);
                let fm = self.eval(m);
                if fm > 0.5 * (f1 + f2) + slack {
                    return fail("convex", format!("midpoint {m} lies above the chord"));
                }
            }
        }
        Ok(())
    }
}
