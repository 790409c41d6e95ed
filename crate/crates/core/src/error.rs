use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("operator is not Hermitian: max |M - M^†| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("local observable is degenerate on its subsystem (multiplicities {multiplicities:?})")]
    DegenerateLocalObservable { multiplicities: Vec<usize> },

    #[error("outcome {index} has zero probability")]
    ZeroProbabilityBranch { index: usize },

    #[error("invalid oracle: {0}")]
    InvalidOracle(String),

    #[error("oracle parse error on line {line}: {message}")]
    OracleParse { line: usize, message: String },

    #[error("collected {samples} samples without reaching rank {needed}")]
    RankDeficient { samples: usize, needed: usize },

    #[error("system has full rank; no nonzero nullspace vector")]
    FullRank,

    #[error("invalid register width {0}")]
    InvalidWidth(usize),

    #[error("invalid marked set: {0}")]
    InvalidMarkedSet(String),
}
