use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relation {relation}: term {term} has a path of length {length} (< 2)")]
    NonAdmissible {
        relation: usize,
        term: usize,
        length: usize,
    },
    #[error("relation {relation}: {reason}")]
    InvalidRelation { relation: usize, reason: String },
    #[error("path basis not closed by length cap {cap}")]
    NotFiniteDimensional { cap: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("side mismatch: {0}")]
    SideMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("mutation failed: {0}")]
    MutationFailed(String),
    #[error("invalid index {index} for a collection of length {len}")]
    InvalidIndex { index: usize, len: usize },
    #[error("collection is not full: nonzero residue after {steps} projection steps")]
    NotFull { steps: usize },
    #[error("collection is not strong: Ext^{degree}(E_{i}, E_{j}) = {dim}")]
    NotStrong {
        i: usize,
        j: usize,
        degree: i64,
        dim: usize,
    },
    #[error("unsupported kernel shape: {0}")]
    UnsupportedKernelShape(String),
    #[error("projection kernel normalization failed for index {0}")]
    NormalizationFailed(usize),
    #[error("degree range not certified: {0}")]
    RangeNotCertified(String),
    #[error("not exceptional: {0}")]
    NotExceptional(String),
}

pub type Result<T> = std::result::Result<T, Error>;
