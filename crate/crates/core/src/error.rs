use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A feature cell that is not a finite real. `row` and `col` are 1-based
    /// data row (header excluded) and column positions.
    #[error("row {row}, column {col}: cannot parse {value:?} as a finite number")]
    Parse { row: usize, col: usize, value: String },

    #[error("label error: {0}")]
    Label(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("node contains a single class; closed-form weights need both")]
    SingleClass,

    #[error("no valid split: every candidate feature is constant within the node")]
    NoValidSplit,

    #[error("degenerate projection: all candidate weights are zero")]
    Degenerate,

    #[error("expected {expected} features, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the input data rather than by how the
    /// library was called.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Parse { .. }
                | Error::Label(_)
                | Error::Csv(_)
                | Error::Json(_)
                | Error::Dimension { .. }
                | Error::SingleClass
        )
    }
}
