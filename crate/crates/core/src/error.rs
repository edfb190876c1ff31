use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpaError {
    #[error("letter {letter} is outside the alphabet [1, {d}]")]
    InvalidLetter { letter: u32, d: usize },

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("spectrum has no gap between its two largest eigenvalues")]
    ZeroGap,

    #[error("{what} = {value} exceeds the configured cap of {cap}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = QpaError> = std::result::Result<T, E>;

pub(crate) fn inconsistent(msg: impl Into<String>) -> QpaError {
    QpaError::Inconsistent(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> QpaError {
    QpaError::Domain(msg.into())
}
