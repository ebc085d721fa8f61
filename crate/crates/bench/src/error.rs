use std::io;
use std::path::PathBuf;

use rcmpp::{MatrixMarketError, MetricsError, ReorderError, SolverError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: MatrixMarketError,
    },
    #[error("{}: no parseable .mtx files", .0.display())]
    EmptyCorpus(PathBuf),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{}: malformed permutation file: {reason}", path.display())]
    PermutationFile { path: PathBuf, reason: String },
    #[error(transparent)]
    Reorder(#[from] ReorderError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> BenchError {
        let path = path.into();
        move |source| BenchError::Io { path, source }
    }
}
