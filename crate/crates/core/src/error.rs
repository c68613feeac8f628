use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Text could not be parsed as a polynomial.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// The computation could not reach a certified answer.
    #[error("undecided: {0}")]
    Undecided(String),
    /// The input lies outside what the decision procedure covers.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
