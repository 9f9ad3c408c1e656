use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient mismatch: expected ({em}, {enu}), got ({gm}, {gnu})")]
    AmbientMismatch {
        em: usize,
        enu: usize,
        gm: usize,
        gnu: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown generator index {index} (algebra has {count} generators)")]
    UnknownGenerator { index: usize, count: usize },
    #[error("derivation images must be homogeneous of one common degree")]
    NonHomogeneous,
    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("subspace is not GL-invariant: {0}")]
    NotInvariant(String),
    #[error("element is not a highest weight vector ({0})")]
    NotHighestWeight(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("partition sizes differ: |lambda| = {0}, |cycle type| = {1}")]
    SizeMismatch(usize, usize),
    #[error("declared generators do not generate the algebra")]
    GeneratorsDoNotGenerate,
    #[error("ideal contains generators (degree-1 component is nonzero)")]
    ContainsGenerators,
    #[error("algebra is not pseudo-free, operation only valid for pseudo-free algebras")]
    NotPseudoFree,
    #[error("degenerate projective parameter (0:0)")]
    DegenerateParameter,
    #[error("degree overflow: degree {degree} exceeds nilpotency index {nu}")]
    DegreeOverflow { degree: usize, nu: usize },
    #[error("input error: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
