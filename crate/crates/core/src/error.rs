use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An exact computation refused to run because the instance is above a
    /// configured cap. `flag` names the knob that raises it.
    #[error("size cap exceeded: {what} is {actual}, limit {limit} (raise with {flag})")]
    SizeCap {
        what: &'static str,
        actual: usize,
        limit: usize,
        flag: &'static str,
    },

    #[error("solution limit of {limit} reached after {count} solutions")]
    SolutionLimit { limit: usize, count: usize },

    #[error("arithmetic range exceeded: {0}")]
    Range(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
