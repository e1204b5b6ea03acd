use thiserror::Error;

use crate::combinatorics::Basis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected a weight vector in the {expected} basis, found {found}")]
    WrongBasis { expected: Basis, found: Basis },

    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid K-type: {0}")]
    InvalidKType(String),

    #[error("index {index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("tableau tuple is not distinguished (node weights do not sum to zero)")]
    NotDistinguished,

    #[error("tableau tuple does not match the K-type shapes")]
    ShapeMismatch,

    #[error("profile entry {0} is not a partition")]
    ProfileNotPartition(String),

    #[error("stability violation: {0}")]
    Stability(String),

    #[error("capacity guard: {0}")]
    Capacity(String),

    #[error("input is not a character: {0}")]
    NotACharacter(String),

    #[error("invalid rational weight {0:?}: entries must be weakly decreasing")]
    InvalidWeight(Vec<i64>),

    #[error("invalid quiver configuration: {0}")]
    InvalidQuiver(String),
}
