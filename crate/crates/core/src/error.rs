use thiserror::Error;

/// Errors raised by the ring, basis and inflation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("rank must be at least 2, got {0}")]
    InvalidRank(usize),

    #[error("i out of range: {i} is not in [1, {max}]")]
    IndexOutOfRange { i: usize, max: usize },

    #[error("parity violation: ({i},{p}) does not satisfy the required parity")]
    Parity { i: usize, p: i64 },

    #[error("monomial {0} is not dominant")]
    NotDominant(String),

    #[error("element is not in the span of the standard basis (residual has no dominant monomial)")]
    NotInSpan,

    #[error("inexact division by {0}")]
    InexactDivision(String),

    #[error("invalid height function: {0}")]
    InvalidHeightFunction(String),

    #[error("height function is not increasing")]
    NotIncreasing,

    #[error("invalid increasing map: {0}")]
    InvalidIncreasingMap(String),

    #[error("{target} is not divisible by {source_rank}")]
    Divisibility { source_rank: usize, target: usize },

    #[error("invalid root ({a},{b}) for rank {n}")]
    InvalidRoot { a: usize, b: usize, n: usize },

    #[error("bar-defect coefficient {0} is not antisymmetric with zero constant term")]
    NonzeroConstantDefect(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Frenkel-Mukhin expansion failed: {0}")]
    FrenkelMukhin(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
