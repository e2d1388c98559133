use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("size limit exceeded: {size} states, limit is {limit}")]
    SizeLimit { size: usize, limit: usize },
}

impl Error {
    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
