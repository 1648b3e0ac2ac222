use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry violates grade admissibility: {0}")]
    Inadmissible(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("invalid bifiltration: {0}")]
    InvalidBifiltration(String),
    #[error("lift failed, the inputs are not resolutions of the given modules: {0}")]
    LiftInconsistent(String),
    #[error("search budget of {budget} candidates exhausted without a certificate")]
    BudgetExhausted { budget: u64 },
}

impl Error {
    /// Stable short name, used in machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Shape(_) => "shape",
            Error::Inadmissible(_) => "inadmissible",
            Error::EmptyInput(_) => "empty-input",
            Error::InvalidField(_) => "invalid-field",
            Error::Parse(_) => "parse",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::NotWellDefined(_) => "not-well-defined",
            Error::InvalidBifiltration(_) => "invalid-bifiltration",
            Error::LiftInconsistent(_) => "lift-inconsistent",
            Error::BudgetExhausted { .. } => "budget-exhausted",
        }
    }
}
