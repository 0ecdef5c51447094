//! Special functions: Γ, J_ν, Y_ν, I_ν, K_ν on the real line.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_i, bessel_j, bessel_j_prime, bessel_k, bessel_y, cos_pi, sin_pi, sqrt_bessel_j, sqrt_bessel_j_prime,
    ASYMPTOTIC_FLOOR, SERIES_CUTOFF,
};
pub use gamma::{gamma, ln_gamma};

use serde::{Deserialize, Serialize};

/// How an [`EvalResult`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    Asymptotic,
    Recurrence,
    Reflection,
}

/// A function value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: Method,
}

impl EvalResult {
    pub(crate) fn new(value: f64, abs_error_estimate: f64, method: Method) -> Self {
        debug_assert!(abs_error_estimate.is_finite() && abs_error_estimate >= 0.0);
        EvalResult {
            value,
            abs_error_estimate,
            method,
        }
    }
}

/// A real Bessel order ν.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Order(pub f64);

impl Order {
    /// Orders admissible for a Hankel kernel: ν > −1.
    pub fn hankel(nu: f64) -> crate::Result<Order> {
        if !(nu > -1.0) || !nu.is_finite() {
            return crate::error::domain(format!("Bessel order must exceed -1, got {nu}"));
        }
        Ok(Order(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
