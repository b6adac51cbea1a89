use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates the documented precondition of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A series operation was applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error(
        "n = {n} exceeds the oracle ceiling of {ceiling}; raise the ceiling explicitly to proceed"
    )]
    CeilingExceeded { n: usize, ceiling: usize },
    /// Two routes that must agree did not. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
