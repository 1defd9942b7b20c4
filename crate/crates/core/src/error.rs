use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown element id {0}")]
    UnknownId(u64),

    #[error("probe budget of {budget} exhausted")]
    BudgetExhausted { budget: usize },

    #[error("element {0} probed twice while auditing")]
    RepeatedProbe(u64),

    #[error("split at level {level} left {mid} of {total} elements in the middle part")]
    SplitFailure { level: usize, mid: usize, total: usize },

    #[error("recursion depth {depth} exceeds the limit {limit}")]
    RecursionDepth { depth: usize, limit: usize },

    #[error("solver self-check failed: classifier error {achieved} differs from cut value {optimum}")]
    SolverMismatch { achieved: f64, optimum: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
