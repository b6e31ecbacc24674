use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("Bloch vector of length {norm} lies outside the unit ball")]
    BlochOutOfBall { norm: f64 },
    #[error("matrix is not hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("axis has length {norm}, expected 1")]
    NotUnit { norm: f64 },
    #[error("matrix is not symmetric (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },
    #[error("rate must be positive and finite, got {rate}")]
    BadRate { rate: f64 },
    #[error("dissipator has no non-trivial term")]
    EmptyDissipator,
    #[error("Gram vectors have different lengths ({0}, {1}, {2})")]
    RaggedGram(usize, usize, usize),
    #[error("not completely positive: {0}")]
    NotCp(String),
    #[error("GKS matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("GKS matrix has an imaginary part; no hermitian Lindblad operators reproduce it")]
    ComplexGks,
    #[error("complete-positivity routes disagree: {0}")]
    VerdictMismatch(String),
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("horizon must be positive, got {0}")]
    NegativeHorizon(f64),
    #[error("bad step: dt = {dt}, t_max = {t_max}")]
    BadStep { dt: f64, t_max: f64 },
}
