use thiserror::Error;

/// Errors across the crate. Parse-class errors map to CLI exit code 2,
/// everything else to exit code 1.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("parse error on line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("enumeration guard exceeded: {vars} variables, limit {guard}")]
    GuardExceeded { vars: usize, guard: usize },
    #[error("evidence impossible: conditioning event has possibility 0")]
    ImpossibleEvidence,
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed input text (CLI exit code 2).
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::ParseLine { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidName(_)
                | Error::InvalidWeight(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
