use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input file or string.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// A packing refers to something the instance does not know about.
    #[error("structural error: {0}")]
    Structural(String),

    /// A numeric parameter is outside its allowed range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An input violates the preconditions of the operation.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size or time budget would be exceeded.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: String,
        needed: u128,
        cap: u128,
    },

    /// The Steinberg area condition does not hold.
    #[error("packing condition violated (slack {slack})")]
    Condition { slack: i128 },

    /// An invariant that should be guaranteed by construction failed.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn resource(what: impl Into<String>, needed: u128, cap: u128) -> Error {
    Error::Resource {
        what: what.into(),
        needed,
        cap,
    }
}
