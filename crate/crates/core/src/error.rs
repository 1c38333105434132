use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QcaError {
    #[error("invalid context: {0}")]
    InvalidContext(String),

    /// An enumeration would exceed a configured bound.
    #[error("resource bound exceeded: {what} needs {needed}, bound is {bound}")]
    Resource {
        what: String,
        needed: String,
        bound: String,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("io error: {0}")]
    Io(String),
}

impl QcaError {
    pub fn resource(what: impl Into<String>, needed: impl ToString, bound: impl ToString) -> Self {
        QcaError::Resource {
            what: what.into(),
            needed: needed.to_string(),
            bound: bound.to_string(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, QcaError::Resource { .. })
    }
}

impl From<std::io::Error> for QcaError {
    fn from(e: std::io::Error) -> Self {
        QcaError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for QcaError {
    fn from(e: serde_json::Error) -> Self {
        QcaError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QcaError>;
