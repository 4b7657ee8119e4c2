use thiserror::Error;

/// Errors raised by the engine.
///
/// `Inconsistent` marks an internal identity that failed to hold (for
/// example a class sum not divisible by `k!`); everything else is a
/// validation failure of caller-supplied input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("incomparable weights: {0} vs {1}")]
    IncomparableWeights(usize, usize),
    #[error("normalization undefined for the empty partition")]
    NormalizationUndefined,
    #[error("stretch factor must be at least 1, got {0}")]
    InvalidStretch(i64),
    #[error("table too large: degree {k} exceeds cap {cap}")]
    TableTooLarge { k: usize, cap: usize },
    #[error("cap exceeded: {what} = {value} > {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid density matrix: {invariant} violated (residual {residual:e})")]
    InvalidDensity { invariant: &'static str, residual: f64 },
    #[error("density matrix has no bipartition")]
    MissingBipartition,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no compatible triple at k = {0}")]
    NoCandidate(usize),
    #[error("cache file {path}: {reason}")]
    Cache { path: String, reason: String },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
