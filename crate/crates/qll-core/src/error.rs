//! Error types shared across the library.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unbound indeterminate {0}")]
    UnboundVariable(String),
    #[error("bad binding: {0}")]
    BadBinding(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuatError {
    #[error("division by zero quaternion")]
    DivisionByZero,
    #[error("element is not in the Hurwitz order: {0}")]
    NotInOrder(String),
    #[error("element is not in the lattice S: {0}")]
    NotInLattice(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("beta is not primitive: {0}")]
    NotPrimitive(String),
    #[error("unsupported (h_type, p) combination: {0}")]
    Usage(String),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SourceError {
    #[error("coefficient index must be negative, got {0}")]
    NonNegativeIndex(i64),
    #[error("index {index} requires inactive prime {prime}")]
    InactivePrime { index: u64, prime: u64 },
    #[error("no seed value provided for index {0}")]
    MissingSeed(u64),
    #[error("source has no spectral parameter r")]
    MissingSpectralParameter,
    #[error("configuration error: {0}")]
    Config(String),
}
