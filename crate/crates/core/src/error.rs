use thiserror::Error;

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("word length {length} exceeds the truncation D={bound}; raise D to at least {length}")]
    TruncationOverflow { length: usize, bound: usize },
    #[error("reduced diagonal iterates do not vanish within {bound} steps")]
    NotConilpotent { bound: usize },
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error(
        "map is not in Lin^0: its value on the unit has a coefficient outside the maximal ideal"
    )]
    NotLin0,
    #[error("power series did not terminate within the nilpotency guard {bound}")]
    ConvergenceGuardExceeded { bound: usize },
    #[error("source is not a bialgebra: {0}")]
    NotBialgebra(String),
    #[error("operation needs symmetric-flavor algebras")]
    NotSymmetricFlavor,
    #[error("block sums differ: {lower} vs {upper}")]
    BlockSumMismatch { lower: usize, upper: usize },
    #[error("permutation is not an unshuffle for the given blocks")]
    NotAnUnshuffle,
    #[error("element does not solve the quantum master equation")]
    NotASolution,
    #[error("map is not an MV-morphism")]
    NotAMorphism,
    #[error("element is not of degree zero")]
    NotDegreeZero,
    #[error("element is not primitive")]
    NotPrimitive,
    #[error("algebra is not commutative: {0}")]
    NotCommutative(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
