use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input data violates a type invariant (non-finite samples, empty signal, ...).
    #[error("invalid signal: {0}")]
    Validation(String),

    /// A design or configuration parameter is out of range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Inconsistent shapes, e.g. a wavelet decomposition whose vector lengths
    /// do not match its recorded original length.
    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
