//! Serialization, DOT rendering and the verification harness for the
//! `suffix-convex` witness streams. The `sconvex` binary wraps these.

pub mod document;
pub mod dot;
pub mod report;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{location}: {message}")]
    Document { location: String, message: String },
    #[error(transparent)]
    Core(#[from] suffix_convex::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub(crate) fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        HarnessError::Document {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
