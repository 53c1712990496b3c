use thiserror::Error;

/// Errors raised by the plethysm toolkit.
///
/// The variants line up with the process exit codes of the command-line
/// front end: usage errors (2), resource caps (3), failed cross-checks (4).
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("resource cap exceeded: {what} is {value}, cap is {cap}")]
    Resource {
        what: &'static str,
        value: u128,
        cap: u128,
    },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn resource(what: &'static str, value: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::Resource {
            what,
            value: value.into(),
            cap: cap.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
