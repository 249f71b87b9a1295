use thiserror::Error;

use crate::geometry::GeometryKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown geometry `{0}`")]
    UnknownGeometry(String),

    #[error("polygon needs an even site count of at least 4, got {0}")]
    InvalidPolygon(usize),

    #[error("invalid site permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid site subset {subset:?} for {sites} sites")]
    InvalidSubset { subset: Vec<usize>, sites: usize },

    #[error("subset {0:?} is not an allowed bipartition of this geometry")]
    DisallowedBipartition(Vec<usize>),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} has no antipodal diagonals")]
    NoDiagonals(GeometryKind),

    #[error("{what} is not unitary (deviation {deviation:.3e})")]
    NotUnitary { what: String, deviation: f64 },

    #[error("one-site factor {0} is not in SU(2)")]
    NotSpecialUnitary(usize),

    #[error("matrix is not a complex Hadamard matrix")]
    NotHadamard,

    #[error("Hadamard matrix must be symmetric")]
    AsymmetricHadamard,

    #[error("phase table arity {found} does not match {expected} diagonals")]
    ArityMismatch { expected: usize, found: usize },

    #[error("expected {expected} parameters, found {found}")]
    WrongParameterCount { expected: usize, found: usize },

    #[error("local dimension {0} is not prime")]
    CompositeDimension(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("could not parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("orbits overlap on input tuple {0}")]
    Overlap(String),

    #[error("output tuples are not a bijection: {0}")]
    BijectionViolation(String),

    #[error("exhaustive search over {tuples} input tuples exceeds the limit of {limit}")]
    GuardExceeded { tuples: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("malformed file: {0}")]
    Format(String),
}
