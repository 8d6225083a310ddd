use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix has determinant {found}, expected {expected}")]
    Determinant { expected: String, found: String },
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(String, String),
    #[error("invalid level {0}")]
    InvalidLevel(String),
    #[error("element {element} is not in {group}")]
    NotMember { element: String, group: String },
    #[error("{0} is not a subgroup of {1}")]
    NotSubgroup(String, String),
    #[error("{0} is not normal in {1}")]
    NotNormal(String, String),
    #[error("cusp {cusp} is not a cusp representative of {group}")]
    UnknownCusp { cusp: String, group: String },
    #[error("transport element does not map {from} to {to}")]
    BadTransport { from: String, to: String },
    #[error("expected a {expected} element, got {found}")]
    WrongClass { expected: String, found: String },
    #[error("divisor has degree {0}, expected 0")]
    DivisorDegree(String),
    #[error("precision: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
