use qvp_core::bethe::BetheError;
use qvp_core::symbolic::SymbolicError;
use qvp_core::vertex::VertexError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, violated constraints, unsupported combinations.
    #[error("{0}")]
    Usage(String),
    /// Numeric failure such as no converged root.
    #[error("{0}")]
    Numeric(String),
    /// An internal invariant or oracle agreement was broken.
    #[error("{0}")]
    Invariant(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Invariant(_) | CliError::Io(_) => 4,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<VertexError> for CliError {
    fn from(e: VertexError) -> Self {
        match e {
            VertexError::InvalidConfig(_)
            | VertexError::HilbOnly(_)
            | VertexError::FixedPointIndex(..)
            | VertexError::Unsupported(_)
            | VertexError::Combinat(_) => CliError::Usage(e.to_string()),
            VertexError::Symbolic(s) => s.into(),
            VertexError::NonReducedFixedPoint(_) | VertexError::K(_) => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<SymbolicError> for CliError {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<BetheError> for CliError {
    fn from(e: BetheError) -> Self {
        match e {
            BetheError::ConstraintViolation(_) | BetheError::MissingParameter(_) | BetheError::VariableMismatch => {
                CliError::Usage(e.to_string())
            }
            BetheError::NoConvergence | BetheError::DegenerateJacobian => CliError::Numeric(e.to_string()),
            BetheError::Symbolic(s) => s.into(),
            BetheError::NonIntegerExponent(_) | BetheError::UnsupportedPower(..) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}
