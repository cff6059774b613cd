use thiserror::Error;

use crate::validation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("quotient requested by a space that is not a subspace")]
    NotASubspace,

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("duplicate {kind} `{name}`")]
    DuplicateName { kind: &'static str, name: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("validation failed:\n{0}")]
    Invalid(ValidationReport),

    #[error("assembled differential does not square to zero ({count} nonzero columns); the ring truncation degree {truncation} is too small for this complex, raise it")]
    TruncationArtifact { count: usize, truncation: u32 },

    #[error("page {page} needs ring coefficients of degree {needed}, above the truncation degree {truncation}")]
    TruncationInsufficient { page: u32, needed: u32, truncation: u32 },

    #[error("the class is zero")]
    ZeroClass,

    #[error("absolute invariants need a one-dimensional H_0 (the class `1`), found dimension {dim}")]
    NormalizationUnavailable { dim: usize },

    #[error("brute-force oracle capped at {cap} basis elements, complex has {size}")]
    OracleTooLarge { size: usize, cap: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}
