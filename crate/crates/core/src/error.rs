use thiserror::Error;

pub type Result<T> = std::result::Result<T, LmeError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmeError {
    #[error("need at least two subsystems, got {0}")]
    TooFewSubsystems(usize),

    #[error("need at least two subsystems of dimension >= 2")]
    InsufficientNontrivial,

    #[error("dimension entries must be positive, got {0}")]
    NonPositiveEntry(i64),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("castling requires P/2 < d_n < P, which {0} does not satisfy")]
    NotCaseC(String),

    #[error("subsystem index {index} out of range for {n} subsystems")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("state has {got} amplitudes, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
