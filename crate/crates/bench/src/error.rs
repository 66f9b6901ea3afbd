use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, BenchError>;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config error: {0}")]
    Config(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("record {record}: {source}")]
    Record {
        record: usize,
        #[source]
        source: pliwave_core::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl BenchError {
    /// Process exit status: 2 for configuration problems, 3 for everything
    /// that goes wrong with the data or files.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 2,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| BenchError::Io { path, source }
    }
}

impl From<pliwave_core::Error> for BenchError {
    fn from(e: pliwave_core::Error) -> Self {
        BenchError::Data(e.to_string())
    }
}
