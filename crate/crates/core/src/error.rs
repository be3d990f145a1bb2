use thiserror::Error;

/// Errors surfaced by the library. Every variant describes rejected input or an
/// explicit search limit; internal invariants are asserted instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("zero vector is not allowed here")]
    ZeroVector,
    #[error("search bound exhausted: {0}")]
    BoundExhausted(String),
    #[error("partial result: {0}")]
    Partial(String),
}

pub type Result<T> = std::result::Result<T, Error>;
