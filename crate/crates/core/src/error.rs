use thiserror::Error;

/// Errors raised by distribution, series and estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExgdError {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The density is unbounded at the requested point.
    #[error("density has a pole at x = 0 (alpha = {alpha} < 1)")]
    Pole { alpha: f64 },

    /// A truncated series could not meet its tolerance within the term budget.
    #[error("series did not converge after {terms} terms (estimated relative error {rel_error:e})")]
    NonConvergence { terms: usize, rel_error: f64 },

    /// The survival function underflowed, so a ratio over it is undefined.
    #[error("survival probability underflows to zero at x = {x}")]
    ZeroSurvival { x: f64 },

    /// An iterative solver stopped before meeting its tolerance.
    #[error("{0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, ExgdError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(ExgdError::Domain(msg.into()))
}
