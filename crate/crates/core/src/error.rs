//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition (bad degree, mismatched lengths, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A point lies outside the basis domain by more than the admitted slack.
    #[error("outside domain: {0}")]
    Domain(String),

    /// A computed value left its guard band (e.g. unclamped reconstruction overshoot).
    #[error("out of range: {0}")]
    Range(String),

    /// An iteration failed to converge or a numeric guard tripped.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Malformed input file. `offset` is the byte position where parsing failed.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn format(offset: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            offset,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
