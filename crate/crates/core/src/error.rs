use thiserror::Error;

/// Errors raised by parsing, solving, and reduction building.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input text. Lines are 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// The instance is above the configured desk-scale cap.
    #[error("{what} = {actual} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    /// The formula has no proper assignment, so there is no anchor to define.
    #[error("formula is unsatisfiable")]
    Unsatisfiable,

    /// Input shape not accepted by a construction.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        Error::ContractViolation(message.into())
    }
}
