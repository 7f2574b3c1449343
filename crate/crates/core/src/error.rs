//! Error type shared across the library.

use thiserror::Error;

/// Errors surfaced by library operations.
///
/// All arithmetic is exact, so the only failure modes are structural:
/// mismatched dimensions, invalid arguments, parse errors, and malformed
/// embedded data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two objects that must agree in variable count (or length) do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The zero polynomial was supplied where a nonzero one is required.
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    /// A precondition on an argument failed.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// The embedded or user-supplied dataset is malformed.
    #[error("data error: {0}")]
    Data(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
