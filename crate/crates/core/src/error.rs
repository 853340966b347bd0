use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Domain(String),

    #[error("the unit ideal has no quotient dimension")]
    UnitIdeal,

    #[error("budget exceeded during {stage}")]
    BudgetExceeded { stage: String },

    #[error("invalid strategy: {0}")]
    Strategy(String),
}
