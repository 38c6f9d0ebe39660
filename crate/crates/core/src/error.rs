use thiserror::Error;

/// Errors for invalid parameters and failed searches.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("database must hold at least 2 records, got {0}")]
    DatabaseTooSmall(usize),

    #[error("target index {target} out of range for database of size {size}")]
    TargetOutOfRange { target: usize, size: usize },

    #[error("depolarizing strength must lie in [0, 1], got {0}")]
    NoiseOutOfRange(f64),

    #[error("noise strength must lie in [0, 1) for a peak search, got {0}")]
    NoiseSaturated(f64),

    #[error("detector error must lie in [0, 1), got {0}")]
    EpsilonOutOfRange(f64),

    #[error("POVM needs at least 2 outcomes, got {0}")]
    TooFewOutcomes(usize),

    #[error("POVM with {outcomes} outcomes cannot cover {dim} projectors; need outcomes >= dim")]
    PovmTooSmall { outcomes: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("dense matrices are capped at N <= {cap}, got N = {n}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("no noise threshold: success probability at m_max never exceeds 1/2")]
    NoThreshold,

    #[error("need at least 2 distinct grid points for a fit, got {0}")]
    DegenerateGrid(usize),

    #[error("matrix (I - U) is singular; eigenvalue extraction needs 1 outside the spectrum")]
    SingularCayley,
}

pub type Result<T> = std::result::Result<T, Error>;
