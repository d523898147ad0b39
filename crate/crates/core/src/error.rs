use thiserror::Error;

/// Errors raised by the region engines and evaluators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("system is infeasible")]
    Infeasible,

    #[error("system is unbounded in direction {direction}")]
    Unbounded { direction: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
