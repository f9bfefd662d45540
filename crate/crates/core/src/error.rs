use thiserror::Error;

/// Errors raised by group, subset, spectral and graph operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group spec {0:?}: expected positive integers joined by 'x'")]
    GroupSyntax(String),

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("group order overflows")]
    OrderOverflow,

    #[error("element has {found} coordinates, group has {expected} factors")]
    CoordinateCount { expected: usize, found: usize },

    #[error("coordinate {value} out of range for modulus {modulus}")]
    CoordinateRange { value: usize, modulus: usize },

    #[error("element index {index} out of range for group of order {order}")]
    IndexRange { index: usize, order: usize },

    #[error("invalid element list {0:?}")]
    SubsetSyntax(String),

    #[error("operands belong to different groups: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("subset is not symmetric (S != -S)")]
    NotSymmetric,

    #[error("divisor tuple {divisors:?} does not divide moduli {moduli:?}")]
    NotDivisor {
        divisors: Vec<usize>,
        moduli: Vec<usize>,
    },

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("spectrum is inconsistent: recovered entry {index} is {value:.6}, not near 0 or 1")]
    InconsistentSpectrum { index: usize, value: f64 },

    #[error("spectrum has {found} entries, group order is {expected}")]
    SpectrumLength { expected: usize, found: usize },

    #[error("weight tuple has length {found}, distance profile has length {expected}")]
    WeightLength { expected: usize, found: usize },

    #[error("invalid distance {0:?}")]
    DistanceSyntax(String),

    #[error("matrix is not square")]
    NotSquare,

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| > tolerance")]
    NotSymmetricMatrix { row: usize, col: usize },

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
