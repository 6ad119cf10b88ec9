//! Error type shared by the whole library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{value} has no inverse modulo {p}")]
    NotInvertible { value: u32, p: u32 },
    #[error("cyclotomic operands live over different moduli ({left} vs {right})")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,
    #[error("invalid wall `{0}`")]
    InvalidWall(String),
    #[error("invalid defect `{0}`")]
    InvalidDefect(String),
    #[error("invalid expression `{text}`: {reason}")]
    InvalidExpression { text: String, reason: String },
    #[error("unknown fusion mode `{0}`")]
    UnknownMode(String),
    #[error("walls {0} and {1} cannot be composed vertically")]
    NotComposable(String, String),
    #[error("no reference cell matches {0}")]
    PatternNotFound(String),
    #[error("oracle data error: {0}")]
    Oracle(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
