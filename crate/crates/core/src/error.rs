use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("exponent out of domain: {0}")]
    ExponentDomain(String),

    #[error("cannot parse exponent {input:?}: {reason}")]
    ExponentParse { input: String, reason: String },

    #[error("step {step} does not divide period {n}")]
    StepDoesNotDivide { step: usize, n: usize },

    #[error("window is identically zero")]
    ZeroWindow,

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("unknown condition identifier {0:?}")]
    UnknownCondition(String),

    #[error("support overflow: {0}")]
    SupportOverflow(String),

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("nonpositive data at index {0}")]
    NonPositiveData(usize),

    #[error("not enough points: need at least {need}, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
