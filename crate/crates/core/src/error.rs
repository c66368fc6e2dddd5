use thiserror::Error;

/// Errors raised while building sets, distributions and kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("label `{0}` is not an element of the set")]
    UnknownLabel(String),
    #[error("index {index} out of range for a set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("weights must be nonnegative and sum to 1 (got sum {0})")]
    NotNormalized(String),
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("expected {expected} rows/entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("{0} requires a positive size")]
    ZeroSize(&'static str),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("draw count {draws} exceeds urn size {size}")]
    TooManyDraws { draws: usize, size: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown law id `{0}`")]
    UnknownLaw(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
