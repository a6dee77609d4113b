use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePhaseError {
    #[error("malformed fraction {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("fraction {0:?} is not in lowest terms")]
    NotReduced(String),
    #[error("fraction {0:?} is outside [0, 1)")]
    OutOfRange(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(u32),
    #[error("invalid particle count {0}")]
    InvalidParticleCount(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),
    #[error("shape mismatch: expected {expected} factors, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("dense size {size} exceeds cap {cap}")]
    DenseCapExceeded { size: u128, cap: usize },
    #[error("search space {size} exceeds brute-force cap {cap}")]
    BruteForceCapExceeded { size: u128, cap: u64 },
    #[error("exponent {0} is not a multiple of 1/{1}")]
    NotARootOfUnity(String, u32),
    #[error("operators disagree on particle count: {0} vs {1}")]
    InconsistentParticleCount(usize, usize),
    #[error("system is unsatisfiable; implied differences are vacuous")]
    Unsatisfiable,
    #[error("invalid factor {f} for d = {d}, N = {n}")]
    InvalidFactor { f: u32, d: u32, n: usize },
    #[error("{0}")]
    Construction(String),
    #[error("verification failed for d = {d}, N = {n}: {reason}")]
    VerificationFailed { d: u32, n: usize, reason: String },
    #[error(transparent)]
    Phase(#[from] ParsePhaseError),
}

pub type Result<T> = std::result::Result<T, Error>;
