use thiserror::Error;

use crate::algebra::Tensor;

/// Malformed text input (polynomials, words, tensors, minors).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self { msg: msg.into() }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {value} outside 1..={n}")]
    IndexOutOfRange { value: u32, n: u32 },

    #[error("index {0} has repeated entries")]
    RepeatedEntries(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("word length {found} does not match permutation degree {expected}")]
    WordLength { expected: usize, found: usize },

    #[error("selected word {0} does not occur in the tensor")]
    WordAbsent(String),

    #[error("index multiset mismatch: {0}")]
    MultisetMismatch(String),

    #[error("index {0} is already extremal, it has no standard transposition")]
    AlreadyExtremal(String),

    #[error("{0} and {1} do not both occur")]
    MissingIndex(u32, u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generated relation failed verification, residual {residual}")]
    VerificationFailed { residual: Box<Tensor> },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
