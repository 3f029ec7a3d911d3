use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fold code: {0}")]
    InvalidCode(String),

    #[error("index {index} out of range (valid range {lo}..={hi})")]
    IndexOutOfRange { index: u64, lo: u64, hi: u64 },

    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("code of effective length {actual} is too short; at least {required} instructions are needed")]
    CodeTooShort { required: usize, actual: usize },

    #[error("inference failed: {0}")]
    Inference(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
