use thiserror::Error;

use crate::transvection::ClassTag;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular over GF(2)")]
    SingularMatrix,

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid transvection: destination and source are both {0}")]
    DegenerateTransvection(usize),

    #[error("sequence length {t} out of range for class {class} at n = {n} (max {max})")]
    LengthOutOfRange {
        class: ClassTag,
        n: usize,
        t: usize,
        max: usize,
    },

    #[error("sequence violates the {0} class constraint")]
    ClassConstraint(ClassTag),

    #[error("input is not a bijection on 1..{0}")]
    NotBijective(usize),

    #[error("class violation: {0}")]
    ClassViolation(String),

    #[error("evaluation budget of {0} would be exceeded")]
    BudgetExceeded(u64),

    #[error("no optimum found: {0}")]
    NotFound(String),

    #[error("dimension {n} too large for this operation (max {max})")]
    TooLarge { n: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
