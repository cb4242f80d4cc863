use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("square root undefined: constant term {0} has no root in the coefficient ring")]
    NotASquareRootDomain(String),

    #[error("composition diverges: inner series has nonzero constant term")]
    CompositionDiverges,

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("genus {0} is not supported (supported: 0..=2)")]
    NotImplementedGenus(u32),

    #[error("fit failed: {0}")]
    FitFailed(String),

    #[error("fixed-point solve failed at order {order}")]
    FixedPointFailure { order: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("index {index} is beyond the available range 0..={limit}")]
    OutOfRange { index: usize, limit: usize },

    #[error("size {size} exceeds the hard cap {cap} for exhaustive enumeration")]
    CapExceeded { size: usize, cap: usize },

    #[error("bad sequence: unexpected character {found:?} at position {position}")]
    BadSequence { found: char, position: usize },

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
