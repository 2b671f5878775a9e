use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("square root of non-positive rational {0}")]
    NonPositiveSqrt(String),

    #[error("cannot factor {n}: exceeds trial-division bound {bound} (set QLS_TRIAL_DIVISION_BOUND to raise it)")]
    FactorizationBound { n: String, bound: u64 },

    #[error("{0} is not a squarefree positive integer")]
    NotSquarefree(u64),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("the zero vector has no canonical phase representative")]
    ZeroVector,

    #[error("invalid shape: {0}")]
    Shape(String),

    #[error("input is not verified: {0}")]
    Unverified(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid generator `{id}`: {reason}")]
    Generator { id: String, reason: String },

    #[error(
        "cardinality {c} is impossible for order {order}: no quantum Latin square of order n has cardinality n+1"
    )]
    ImpossibleCardinality { order: usize, c: usize },

    #[error("cardinality {c} is outside [{min},{max}] for order {order}")]
    CardinalityOutOfRange {
        order: usize,
        c: usize,
        min: usize,
        max: usize,
    },

    #[error("m must be at least {min}, got {m}")]
    MTooSmall { m: usize, min: usize },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
