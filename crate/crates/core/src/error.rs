use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("guard `{name}` exceeded: limit {limit}, needed {needed}")]
    Guard { name: &'static str, limit: usize, needed: usize },

    #[error("operation undefined on the infinity polynomial")]
    InfinityPolynomial,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("degree bound too small: {0}")]
    DegreeBound(String),

    #[error("not stabilized: {0}")]
    NotStabilized(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("genericity certificate failed: {0}")]
    Genericity(String),

    #[error("elimination failed ({kind}): {msg}")]
    Elimination { kind: EliminationFailure, msg: String },

    #[error("not a valuated matroid: {0}")]
    NotMatroid(String),

    #[error("unbalanced complex: {0}")]
    Unbalanced(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationFailure {
    /// The input set admits no elimination at all: it is not closed.
    NotTropical,
    /// The configured search space was exhausted.
    SearchBound,
}

impl std::fmt::Display for EliminationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EliminationFailure::NotTropical => write!(f, "input set is not closed under elimination"),
            EliminationFailure::SearchBound => write!(f, "search bound exhausted"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
