//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("modulus {0} is reducible over F_{1}")]
    Reducible(String, u64),

    #[error("modulus degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("field parameters out of supported range: {0}")]
    FieldTooLarge(String),

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("value {value} is not a canonical element index of a field of order {order}")]
    ValueOutOfRange { value: u64, order: u64 },

    #[error("enumeration of {needed} items exceeds the cap of {cap} (raise the cap to override)")]
    CapExceeded { needed: u128, cap: u64 },

    #[error("empty set has no affine hull")]
    EmptySet,

    #[error("scaling a subspace by zero is not invertible")]
    ZeroScalar,

    #[error("{k} does not divide the extension degree {n}")]
    NotADivisor { k: usize, n: usize },

    #[error("linear map is singular")]
    SingularMap,

    #[error("translation constant b must be nonzero")]
    ZeroB,

    #[error("scale factor alpha must be nonzero")]
    ZeroAlpha,

    #[error("alpha lies in a proper subfield; the repaired map needs a full-field generator")]
    AlphaInProperSubfield,

    #[error("operation requires characteristic {expected}")]
    WrongCharacteristic { expected: &'static str },

    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),

    #[error("table has wrong length: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("table entry {index} = {value} is out of range for field order {order}")]
    OutOfRangeEntry {
        index: usize,
        value: u64,
        order: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}
