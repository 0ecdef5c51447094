//! Oscillatory integral transforms evaluated by arch decomposition.

// Negated float comparisons are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod error;
pub mod positivity;
pub mod quad;
pub mod special;
pub mod sturm;
pub mod transforms;
pub mod validation;
pub mod zeros;

pub use error::{Error, Result};
