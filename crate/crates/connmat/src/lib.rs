//! Exact-arithmetic enumeration and verification of connection matrices.
//!
//! The library works with a finite poset whose elements index a family of
//! free graded modules, and searches for (strictly) lower triangular
//! degree `-1` boundary maps whose interval-restricted homology reproduces
//! prescribed graded-module data. All arithmetic is exact: finite prime
//! fields, arbitrary-precision rationals, or integers via Smith normal form.

pub mod block;
pub mod format;
pub mod graded;
pub mod homology;
pub mod linalg;
pub mod poset;
pub mod search;
pub mod symmetry;

use thiserror::Error;

/// Crate-wide error type. Variants are shared across modules since most
/// operations mix poset, linear-algebra and module-level failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("relation closure forces {0} > {0}")]
    Cycle(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime field characteristic {0} too large")]
    PrimeTooLarge(u64),
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("operation requires the integer ring, got {0}")]
    NotIntegerRing(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("{0} is not an interval")]
    NotAnInterval(String),
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i64),
    #[error("({0}, {1}) is not an adjacent pair")]
    NotAdjacent(String, String),
    #[error("enumeration is only supported over finite prime fields, got {0}; use verify instead")]
    UnsupportedRing(String),
    #[error("diagonal differential at `{0}` does not square to zero")]
    InfeasibleDiagonal(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("missing index data for singleton interval {{{0}}}")]
    MissingSingletonData(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
