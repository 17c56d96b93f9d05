use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an operation's arguments was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The graph has no perfect matching at all.
    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    /// The matching exists but is not nice, so the requested structure
    /// (edge-involution, expansion step, decomposition) is undefined.
    #[error("matching is not nice")]
    NotNice,

    /// A text-format file could not be parsed.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
