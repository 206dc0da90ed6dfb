use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live over different variable sets or ring contexts.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("constant term {0} is not a unit")]
    NonUnit(String),

    #[error("degree {degree} exceeds truncation degree {max}")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("relation is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("matrix is not hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
