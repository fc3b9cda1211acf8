use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("negative term {0} (sequence terms must be non-negative)")]
    NegativeTerm(String),
    #[error("malformed sequence literal `{0}`: {1}")]
    BadSequence(String, String),
    #[error("malformed tail literal `{0}`: {1}")]
    BadTail(String, String),
    #[error("sequence has support at negative index {0}")]
    NegativeSupport(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hypothesis not met: {0} is not log-concave")]
    NotLogConcave(String),
    #[error("operation requires a non-null sequence")]
    NullSequence,
    #[error("malformed triangle: {0}")]
    BadTriangle(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
