use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite matrix entry at ({row}, {col})")]
    NumericInput { row: usize, col: usize },
    #[error("eigenvalue {index} failed to deflate after {iterations} QL iterations")]
    SolverFailure { index: usize, iterations: usize },
    #[error("hermitian embedding produced unpaired eigenvalues at position {position} (gap {gap:e}, tolerance {tolerance:e})")]
    EmbeddingDedup { position: usize, gap: f64, tolerance: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("zeta has a pole at s = 1")]
    Pole,
    #[error("precision check failed: {0}")]
    Precision(String),
    #[error("missed zeros in ({t_min}, {t_max}]: found {found}, expected {expected}; retry with a smaller scan step")]
    MissedZero { t_min: f64, t_max: f64, found: usize, expected: i64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: value {value} is not greater than the previous value {previous}")]
    Monotonicity { line: usize, value: f64, previous: f64 },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
