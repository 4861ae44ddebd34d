use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("degree {n} exceeds the configured maximum {max}")]
    Capacity { n: usize, max: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    /// A computed quantity violated an identity that must hold for valid input.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
