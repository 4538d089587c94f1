use thiserror::Error;

/// Errors raised by the algebra, the analyses and the document layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("entry ({row}, {col}) is +inf; a matrix over R ∪ {{-inf}} is required")]
    PosInfEntry { row: usize, col: usize },

    #[error("graph contains a positive-weight circuit through node {node}")]
    NotInNonegset { node: usize },

    #[error("closure did not reach a fixpoint within {limit} iterations")]
    IterationLimit { limit: usize },

    #[error("invalid number {0:?}")]
    InvalidNumber(String),

    #[error("invalid interval [{lower}, {upper}]: {reason}")]
    InvalidInterval {
        lower: String,
        upper: String,
        reason: &'static str,
    },

    #[error("place {place} references transition index {index}, but the net has {count} transitions")]
    TransitionOutOfRange {
        place: usize,
        index: usize,
        count: usize,
    },

    #[error("unknown transition {0:?}")]
    UnknownTransition(String),

    #[error("duplicate transition label {0:?}")]
    DuplicateTransition(String),

    #[error("place {place} holds {tokens} tokens; normalize the marking first")]
    MarkingNotNormalized { place: usize, tokens: u32 },

    #[error("places from t{from} to t{to} with {tokens} token(s) have disjoint intervals")]
    ConflictingPlaces {
        from: usize,
        to: usize,
        tokens: u32,
    },

    #[error("trajectory has vectors of length {found}, the net has {expected} transitions")]
    TrajectoryDimension { expected: usize, found: usize },

    #[error("trajectory must contain at least one firing vector")]
    EmptyTrajectory,

    #[error("prefix length must be at least 1")]
    ZeroLength,

    #[error("net is not consistent under {0} initial conditions")]
    Inconsistent(&'static str),

    #[error("cannot read {path}: {reason}")]
    Read { path: String, reason: String },

    #[error("schema violation: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
