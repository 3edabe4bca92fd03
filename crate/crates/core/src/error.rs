use thiserror::Error;

/// Errors shared by every module of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("point set is not two-dimensional")]
    Degenerate,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("checkpoint does not match this run: {0}")]
    ResumeMismatch(String),
    #[error("run interrupted after {0} checkpoints")]
    Interrupted(usize),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_) => 2,
            Error::Overflow(_) | Error::Degenerate | Error::Verification(_) => 3,
            Error::ResumeMismatch(_) => 4,
            Error::Interrupted(_) => 5,
            Error::Io(_) => 1,
        }
    }
}
