//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, decoding and I/O operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric or length precondition was violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// A code could not be built from the given description.
    #[error("construction error: {0}")]
    Construction(String),
    /// A structured text file could not be parsed.
    #[error("parse error in {path} (line {line}): {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    /// An experiment configuration is invalid.
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn construction(msg: impl Into<String>) -> Self {
        Error::Construction(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
