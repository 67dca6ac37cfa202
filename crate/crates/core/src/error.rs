use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("{mu:?} is not a {l}-partition")]
    NotLPartition { mu: Vec<usize>, l: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree {m} exceeds the guard of {limit}; pass the large-computation override")]
    GuardExceeded { m: usize, limit: usize },
    #[error("permutation {0} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("k = {k} out of range (need 0 <= k <= n = {n})")]
    InvalidTwoRowIndex { n: usize, k: usize },
    #[error("procedure failure for shape {lambda:?}: {found} independent tableaux, {needed} needed")]
    ProcedureFailure {
        lambda: Vec<usize>,
        found: usize,
        needed: usize,
    },
    #[error("internal consistency error: {0}")]
    Internal(String),
}
