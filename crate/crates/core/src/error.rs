use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// A caller broke an operation's precondition (bad vertex, empty set, parameter out of range).
    #[error("usage error: {0}")]
    Usage(String),

    /// An oracle answered with something no target in the candidate set could produce.
    #[error("protocol violation: {0}")]
    Protocol(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("generator failed: {0}")]
    Generator(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
