use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-contract arguments.
    #[error("invalid input: {0}")]
    Input(String),

    /// Request exceeds a hard size limit of the algorithm.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// `offset` is a byte offset into the offending line.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("sampling failed: {0}")]
    Sampling(String),

    /// The graph does not satisfy the theorem's hypotheses (connected, even order >= 4).
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
