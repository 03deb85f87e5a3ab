use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("variable blocks overlap at index {0}")]
    OverlappingBlocks(usize),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not orthogonal")]
    NotOrthogonal,

    #[error("not-eikonal evidence: {0}")]
    NotEikonalEvidence(String),

    #[error("rotation does not bring the quartic to normal form: {0}")]
    NotNormalized(String),

    #[error("no exact orthonormal frame available: {0}")]
    ExactFrameUnavailable(String),

    #[error("pencil fails the Clifford-type checks: {0}")]
    PencilCheck(String),

    #[error("infeasible search parameters: {0}")]
    Infeasible(String),

    #[error("sphere maximization hit the iteration cap (best value {value}, tangential gradient {gradient:e})")]
    NoConvergence {
        best: Vec<f64>,
        value: f64,
        gradient: f64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("inconsistent classification data: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
