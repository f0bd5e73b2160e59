use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarcountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not skew-symmetric at entry ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("Pfaffian requires an even size, got {0}")]
    OddSize(usize),

    #[error("zero matrix")]
    ZeroMatrix,

    #[error("zero form")]
    ZeroForm,

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid weighted space: {0}")]
    InvalidWeights(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Stable machine-readable tag, used in CLI error JSON and FFI status mapping.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VarcountMismatch { .. } => "varcount-mismatch",
            Error::Dimension(_) => "dimension",
            Error::NotSkew { .. } => "not-skew",
            Error::OddSize(_) => "odd-size",
            Error::ZeroMatrix => "zero-matrix",
            Error::ZeroForm => "zero-form",
            Error::Parse { .. } => "parse",
            Error::InvalidWeights(_) => "invalid-weights",
            Error::Hypothesis(_) => "hypothesis",
            Error::SizeLimit(_) => "size-limit",
            Error::Degenerate(_) => "degenerate",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
