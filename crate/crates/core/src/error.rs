use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero input")]
    ZeroInput,

    #[error("roots not separated")]
    RootsNotSeparated,

    #[error("excluded slope")]
    ExcludedSlope,

    #[error("invalid slope {p}/{q}: {reason}")]
    InvalidSlope {
        p: i64,
        q: i64,
        reason: &'static str,
    },

    #[error("malformed slope {input:?}: {reason}")]
    MalformedSlope { input: String, reason: &'static str },

    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("inverse of zero")]
    InverseOfZero,

    #[error("field mismatch: order {left} vs {right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("invalid cyclotomic parameter {0}: need N odd and at least 3, order 2N")]
    InvalidField(u64),

    #[error("non-invertible normalization")]
    NonInvertibleNormalization,

    #[error("{0} is not an odd prime")]
    NotOddPrime(i64),

    #[error("coincident interpolation nodes")]
    CoincidentNodes,

    #[error("color {color} out of range 0..={max}")]
    ColorOutOfRange { color: i64, max: i64 },

    #[error("generator {generator} is not defined on {family} characters")]
    FamilyMismatch {
        generator: String,
        family: &'static str,
    },

    #[error("count mismatch: enumerated {enumerated}, formula {formula}")]
    CountMismatch { enumerated: usize, formula: i64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),
}
