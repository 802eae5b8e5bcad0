use thiserror::Error;

/// Crate-wide error type.
///
/// The CLI maps these onto its exit-code contract: invalid input is exit 2,
/// exhausted caps and budgets are exit 3 (so scripts never mistake an
/// exhausted cap for a proven "no").
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} exceeded cap of {cap}")]
    ResourceExceeded { what: String, cap: u64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn resource(what: impl Into<String>, cap: u64) -> Self {
        Error::ResourceExceeded { what: what.into(), cap }
    }
}
