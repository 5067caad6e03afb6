use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("invalid node {node} for an algebra of rank {rank}")]
    InvalidNode { node: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {weight} has length {len}, expected {rank}")]
    WeightRank {
        weight: String,
        len: usize,
        rank: usize,
    },

    #[error("characters belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions have different totals ({left} vs {right})")]
    TotalMismatch { left: String, right: String },

    #[error("{lower} is not below {upper} in the partition order")]
    Incomparable { lower: String, upper: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("term budget of {budget} monomials exceeded")]
    BudgetExceeded { budget: usize },

    #[error("FM inconsistency at monomial {monomial} (node {node})")]
    FmInconsistency { monomial: String, node: usize },

    #[error("Q-system violation for {algebra} node {node} level {level}: negative multiplicity at {weight}")]
    QSystemViolation {
        algebra: String,
        node: usize,
        level: u32,
        weight: String,
    },

    #[error("multiplicity inequality violated: {0}")]
    Violation(String),

    #[error("factorization search truncated after {0} candidates")]
    SearchTruncated(usize),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checked helpers for the exact integer arithmetic used by characters.
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}
