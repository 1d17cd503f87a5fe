use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("matrix tuple is not crisscross")]
    NotCrisscross,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("malformed label: {0}")]
    MalformedLabel(String),

    #[error("classification failed: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
