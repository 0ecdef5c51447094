//! The normal form u″ + φ(t)u = 0: integration, oscillation criteria and
//! the Sturm comparison and convexity checks.

mod classify;
mod compare;
mod convexity;
mod ode;
mod phi;

pub use classify::{classify_oscillation, Criterion, OscillationClassification, SampleEvidence};
pub use compare::{compare_solutions, compare_solutions_with, ComparisonReport};
pub use convexity::{check_arch_convexity, ConvexityMode, ConvexityReport, RootCheck};
pub use ode::{solve_normal_form, solve_normal_form_with, OdeOptions, Trajectory};
pub use phi::{Monotonicity, PhiAsymptotics, PhiSpec};
