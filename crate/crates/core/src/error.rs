use thiserror::Error;

/// Errors produced by the algebra engines and the momentum calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("leg count mismatch: {left} vs {right}")]
    LegMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires a {expected}-leg tensor, got {got} legs")]
    WrongLegCount { expected: usize, got: usize },
    #[error("series precondition violated: grade-0 part {component} must be {required}")]
    SeriesPrecondition { component: String, required: &'static str },
    #[error("element is not invertible: grade-0 part is {0}")]
    NotInvertible(String),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
