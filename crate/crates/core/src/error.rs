use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A generator or constructor received parameters outside its domain.
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    /// A configured size guard would be exceeded.
    #[error("{what} needs {actual} vertices, above the configured limit of {limit}")]
    SizeGuard {
        what: &'static str,
        limit: usize,
        actual: u128,
    },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// The input violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("vertex set over {found} vertices used with a graph on {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("sampling failed: {0}")]
    Sampling(String),

    /// A certificate or witness failed re-verification.
    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn guard(what: &'static str, limit: usize, actual: u128) -> Self {
        Error::SizeGuard {
            what,
            limit,
            actual,
        }
    }
}
