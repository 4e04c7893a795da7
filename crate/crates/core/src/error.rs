//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u32),

    #[error("malformed rational or infinity: {0:?}")]
    BadRational(String),

    #[error("point lies on the boundary of the strip and carries no indecomposable")]
    BoundaryPoint,

    #[error("point lies outside the domain of the operation: {0}")]
    OutOfDomain(String),

    #[error("invalid interval data: {0}")]
    InvalidInterval(String),

    #[error("invalid pair of complexes: {0}")]
    InvalidPair(String),

    #[error("only complexes of dimension at most one are supported (got {0})")]
    UnsupportedDimension(usize),

    #[error("persistence pair cannot be translated: {0}")]
    DictionaryError(String),

    #[error("morphisms cannot be composed: {0}")]
    CompositionError(String),

    #[error("entry ({row}, {col}) is not an allowed slot")]
    ForbiddenSlot { row: usize, col: usize },

    #[error("data does not define a morphism of presented functors: {0}")]
    NotAMorphism(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("characteristic mismatch: {0} versus {1}")]
    CharMismatch(u32, u32),

    #[error("function has infinite support: {0}")]
    InfiniteSupport(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}
