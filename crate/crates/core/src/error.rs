use thiserror::Error;

/// Errors raised when constructing or combining quantum and classical objects.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unsupported dimension {0} (only 2 and 4 are handled)")]
    UnsupportedDimension(usize),

    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("matrix is not unitary: max |U\u{2020}U - I| = {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not an orthogonal projector: {reason}")]
    NotProjector { reason: String },

    #[error("matrix is not hermitian: max |M - M\u{2020}| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("POVM elements do not sum to identity: max deviation = {deviation:.3e}")]
    IncompletePovm { deviation: f64 },

    #[error("density operator trace is {trace:.12} instead of 1")]
    BadTrace { trace: f64 },

    #[error("invalid probability {0}")]
    InvalidProbability(f64),

    #[error("probabilities sum to {sum:.12} instead of 1")]
    NotADistribution { sum: f64 },

    #[error("value {value} outside domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("bit strings have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
