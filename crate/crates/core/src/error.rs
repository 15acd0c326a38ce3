use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An internal consistency check failed. Indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error("group enumeration exceeded cap of {cap} elements")]
    OrderCapExceeded { cap: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
