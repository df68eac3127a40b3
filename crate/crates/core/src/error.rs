use thiserror::Error;

/// Errors raised by the optimizer substrate, the step kernels and the
/// optimizers themselves.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid bounds at index {index}: lower {lower} must be < upper {upper}")]
    InvalidBounds { index: usize, lower: f64, upper: f64 },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("member {0} has not been evaluated")]
    Unevaluated(usize),

    #[error("invalid budget: {0}")]
    InvalidBudget(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("iteration {t} is outside the {expected} window for T = {max}")]
    WrongPhase { t: usize, max: usize, expected: &'static str },

    #[error("iteration {t} exceeds maximum {max}")]
    IterationOutOfRange { t: usize, max: usize },

    #[error("population needs at least {needed} members, has {actual}")]
    PopulationTooSmall { needed: usize, actual: usize },
}

pub type Result<T, E = OptimError> = std::result::Result<T, E>;
