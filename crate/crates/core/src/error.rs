//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by any stage of the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed or unsupported image file; `offset` is the byte position
    /// where parsing gave up, when that is meaningful.
    #[error("{path}: {reason} (byte offset {offset})")]
    ImageFormat {
        path: PathBuf,
        offset: usize,
        reason: String,
    },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate measure: {0}")]
    DegenerateMeasure(String),

    #[error("undefined orientation: covariance matrix is zero")]
    UndefinedOrientation,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// All objects identical; PCA has no variance to decompose.
    #[error("rank-0 data: no variance across objects")]
    RankZero,

    #[error("training failed: {0}")]
    TrainingFailure(String),

    /// A cross-validation fold failed to train or predict.
    #[error("run {run}, fold {fold}: {source}")]
    FoldFailure {
        run: usize,
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: line {line}: {reason}")]
    Manifest {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
