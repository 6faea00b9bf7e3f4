use thiserror::Error;

/// Errors raised by the simulation, problem and optimization layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QaoaError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("non-finite objective value: {0}")]
    NonFinite(String),
    #[error("approximation ratio undefined: {0}")]
    UndefinedRatio(String),
}

impl QaoaError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Self::InvalidArgument(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Self::Configuration(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Self::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, QaoaError>;
