use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("iteration limit reached: {0}")]
    IterationLimit(String),

    #[error("bracket error: {0}")]
    Bracket(String),

    #[error("divergence: {0}")]
    Divergence(String),

    #[error("integration span too short: {0}")]
    Span(String),

    #[error("step size collapse at t = {t}: {detail}")]
    Stiffness { t: f64, detail: String },

    #[error("missing capability: {0}")]
    Capability(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for errors that come from an iterative process failing to
    /// converge, as opposed to bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::IterationLimit(_) | Error::Divergence(_) | Error::Stiffness { .. } | Error::Span(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
