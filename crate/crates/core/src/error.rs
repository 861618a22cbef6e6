use thiserror::Error;

/// Errors surfaced by the library operations.
///
/// `CapExceeded` marks a search that was refused because the instance is
/// larger than the configured exhaustive-search cap; callers can either
/// raise the cap or switch to a sampled/randomized mode where one exists.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("structure error: {0}")]
    StructureError(String),
    #[error("generator bug: {0}")]
    GeneratorBug(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidQuery(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::CapExceeded(msg.into())
    }

    pub fn structure(msg: impl Into<String>) -> Self {
        Error::StructureError(msg.into())
    }
}
