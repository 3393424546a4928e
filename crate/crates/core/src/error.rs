use thiserror::Error;

/// Errors raised by the exact combinatorics routines.
///
/// Every variant is a domain error: bad input or a request outside the
/// supported range. Verification failures are reported as data, not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("slot count mismatch: expected {expected}, got {got}")]
    SlotMismatch { expected: usize, got: usize },
    #[error("dimension vector has zero total")]
    ZeroDimension,
    #[error("dimension vector has {got} entries but quiver has {expected} vertices")]
    VertexMismatch { expected: usize, got: usize },
    #[error("cocharacter is not sum-zero (sum = {0})")]
    NotSumZero(i64),
    #[error("cocharacter is not antidominant")]
    NotAntidominant,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight is not integral")]
    NotIntegral,
    #[error("weight is not Weyl-invariant")]
    NotWeylInvariant,
    #[error("negative radius {0}")]
    NegativeRadius(String),
    #[error("weight is not in the span of the polytope")]
    NotInSpan,
    #[error("r-invariant is zero, there is no face")]
    ZeroRadius,
    #[error("no cocharacter class attains the face equality")]
    NoFace,
    #[error("quiver is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("quiver has no cut")]
    NoCut,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown quiver '{0}'")]
    UnknownQuiver(String),
    #[error("slopes are not strictly decreasing: {0}")]
    NonStrictSlopes(String),
    #[error("partition {0} is not realized by a standard form")]
    Unrealizable(String),
    #[error("partitions have different totals")]
    TotalMismatch,
    #[error("negative argument: {0}")]
    NegativeArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element is not symmetric in z1..z{0}")]
    NotSymmetricElement(usize),
    #[error("pole: {0} vanishes")]
    Pole(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("could not find a non-pole sample point after {0} attempts")]
    SamplingExhausted(usize),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
