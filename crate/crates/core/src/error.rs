use thiserror::Error;

/// Ways a diagonal or set literal can fail to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed diagonal `{0}`")]
    Malformed(String),
    #[error("diagonal `{text}` has {found} vertices, expected {expected}")]
    Arity {
        text: String,
        expected: usize,
        found: usize,
    },
    #[error("diagonal `{text}` violates the gap condition: {reason}")]
    Gap { text: String, reason: String },
    #[error("digit-concatenated diagonal `{0}` is only accepted when m <= 9")]
    DigitsNeedSmallModel(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
