use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {requested} {what} requested, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: usize,
    },

    #[error("parameters outside the construction's regime: {0}")]
    OutOfRegime(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
