use thiserror::Error;

/// Errors produced anywhere in the synthesis / simulation pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A gate or operation parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Wires collide, are out of range, or a block is used where it does not apply.
    #[error("structural error: {0}")]
    Structural(String),

    /// Malformed netlist or graph text.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input parsed but violates a domain invariant (self-loop, asymmetric matrix, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A size guard was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The instance has no marked states.
    #[error("no solutions: {0}")]
    NoSolution(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
