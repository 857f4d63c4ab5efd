use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
    #[error("operation `{name}` expects {expected} arguments, got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("variable `{0}` is not assigned")]
    UnassignedVariable(String),
    #[error("signatures differ")]
    SignatureMismatch,
    #[error("{what} would need {needed} (guard is {limit}); raise the guard to proceed")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("partition is not compatible with `{0}`")]
    NotCompatible(String),
    #[error("{0}")]
    Precondition(String),
    #[error("not a {kind}: {axiom} fails")]
    Axiom { kind: &'static str, axiom: String },
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
