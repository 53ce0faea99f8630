use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AliaError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("internal data error: {0}")]
    Internal(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AliaError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(AliaError::Domain(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(AliaError::Internal(msg.into()))
}
