use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use log::warn;
use rcmpp::{parse_matrix_market_with, ParseOptions, SparseSymMatrix};
use serde::{Deserialize, Serialize};

use crate::error::BenchError;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// File stem, used as the matrix name in reports.
    pub name: String,
    pub path: PathBuf,
    pub matrix: SparseSymMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedMatrix {
    pub matrix: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    /// Sorted by (n, nnz, name).
    pub entries: Vec<CorpusEntry>,
    /// Files that could not be parsed, in file-name order.
    pub skipped: Vec<SkippedMatrix>,
}

pub fn read_matrix(path: &Path, options: ParseOptions) -> Result<SparseSymMatrix, BenchError> {
    let file = File::open(path).map_err(BenchError::io(path))?;
    parse_matrix_market_with(BufReader::new(file), options).map_err(|source| BenchError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads every `*.mtx` file directly under `dir`. Unparseable files are
/// logged and listed in `skipped`; a directory with nothing usable is an error.
pub fn load_corpus(dir: &Path, options: ParseOptions) -> Result<Corpus, BenchError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(BenchError::io(dir))?
        .map(|e| e.map(|e| e.path()).map_err(BenchError::io(dir)))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.is_file() && p.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")));
    paths.sort();

    let mut corpus = Corpus::default();
    for path in paths {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        match read_matrix(&path, options) {
            Ok(matrix) => corpus.entries.push(CorpusEntry { name, path, matrix }),
            Err(e) => {
                warn!("skipping {e}");
                corpus.skipped.push(SkippedMatrix {
                    matrix: name,
                    reason: e.to_string(),
                });
            }
        }
    }
    if corpus.entries.is_empty() {
        return Err(BenchError::EmptyCorpus(dir.to_path_buf()));
    }
    corpus.entries.sort_by(|a, b| {
        (a.matrix.n(), a.matrix.nnz(), &a.name).cmp(&(b.matrix.n(), b.matrix.nnz(), &b.name))
    });
    Ok(corpus)
}

impl Corpus {
    /// Wraps in-memory matrices, sorting them the same way as [`load_corpus`].
    pub fn from_matrices(matrices: impl IntoIterator<Item = (String, SparseSymMatrix)>) -> Corpus {
        let mut entries: Vec<CorpusEntry> = matrices
            .into_iter()
            .map(|(name, matrix)| CorpusEntry {
                path: PathBuf::from(format!("{name}.mtx")),
                name,
                matrix,
            })
            .collect();
        entries.sort_by(|a, b| {
            (a.matrix.n(), a.matrix.nnz(), &a.name).cmp(&(b.matrix.n(), b.matrix.nnz(), &b.name))
        });
        Corpus {
            entries,
            skipped: Vec::new(),
        }
    }
}
