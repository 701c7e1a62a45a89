use thiserror::Error;

/// Errors raised by the library.
///
/// The variants line up with the CLI's exit-code contract: argument errors are
/// usage errors, domain errors cover inadmissible parameters of otherwise
/// well-formed requests, and parse errors carry the offending line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} {value} out of range 0..{bound}")]
    Range {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
