use thiserror::Error;

use crate::grading::Multidegree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("{0} is not a usable prime characteristic")]
    InvalidCharacteristic(u64),
    #[error("graded piece is not finite: {0}")]
    NonFiniteRegion(String),
    #[error("element is not in the submodule")]
    NotInSubmodule,
    #[error("the quotient ring is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("Homgr of two unbounded complexes")]
    BothUnbounded,
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("map entry ({row}, {col}) is not homogeneous of degree {expected}")]
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: Multidegree,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
