use thiserror::Error;

/// Errors raised by the linear-algebra, Lie-algebra and experiment layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the enclosing space")]
    ContainmentViolation,
    #[error("invalid matrix order {0}")]
    InvalidOrder(usize),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
