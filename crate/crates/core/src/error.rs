use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, got {found}")]
    NvarsMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("order {order} exceeds degree {degree}")]
    OrderExceedsDegree { order: usize, degree: usize },

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("invalid interval: lower bound must be below upper bound")]
    EmptyInterval,

    #[error("polynomial is not real-rooted")]
    NotRealRooted,

    #[error("direction is not admissible: {0}")]
    BadDirection(String),

    #[error("restriction along the direction is not real-rooted; the context is not hyperbolic")]
    ContextNotHyperbolic,

    #[error("nonnegative orthant is not contained in the cone: basis vector {index} fails")]
    OrthantNotContained { index: usize },

    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("size {size} exceeds the configured limit {limit}")]
    LimitExceeded { size: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
}
