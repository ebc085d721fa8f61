//! Single-matrix reordering and the permutation file format.
//!
//! A permutation file holds `n` on its first line, then one line per
//! original index with that row's new position, 0-based.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rcmpp::{
    apply_permutation, rcm_pipeline, write_matrix_market, Algorithm, ParseOptions, Permutation,
    ReorderReport, StartPolicy,
};

use crate::corpus::read_matrix;
use crate::error::BenchError;

pub fn write_permutation(p: &Permutation, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "{}", p.len())?;
    for &new in p.new_of_old() {
        writeln!(w, "{new}")?;
    }
    w.flush()
}

pub fn read_permutation(path: &Path) -> Result<Permutation, BenchError> {
    let bad = |reason: String| BenchError::PermutationFile {
        path: path.to_path_buf(),
        reason,
    };
    let file = File::open(path).map_err(BenchError::io(path))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("empty file".into()))?
        .map_err(BenchError::io(path))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| bad(format!("bad header `{header}`")))?;
    let mut new_of_old = Vec::with_capacity(n);
    for (k, line) in lines.enumerate() {
        let line = line.map_err(BenchError::io(path))?;
        if line.trim().is_empty() {
            continue;
        }
        new_of_old.push(
            line.trim()
                .parse()
                .map_err(|_| bad(format!("line {}: `{line}` is not an index", k + 2)))?,
        );
    }
    if new_of_old.len() != n {
        return Err(bad(format!(
            "header says {n} entries, found {}",
            new_of_old.len()
        )));
    }
    Permutation::from_new_of_old(new_of_old).map_err(|e| bad(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct ReorderJob {
    pub input: PathBuf,
    pub algorithm: Algorithm,
    pub policy: StartPolicy,
    pub symmetrize: bool,
    /// Permuted matrix, Matrix Market.
    pub out: Option<PathBuf>,
    pub perm_out: Option<PathBuf>,
    /// ReorderReport as JSON.
    pub report: Option<PathBuf>,
}

fn create(path: &Path) -> Result<BufWriter<File>, BenchError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(BenchError::io(path))
}

/// Reorders one matrix and writes whichever outputs the job asks for.
pub fn run_reorder(job: &ReorderJob) -> Result<ReorderReport, BenchError> {
    let m = read_matrix(
        &job.input,
        ParseOptions {
            symmetrize: job.symmetrize,
        },
    )?;
    let (perm, report) = rcm_pipeline(&m, job.algorithm, job.policy)?;
    if let Some(path) = &job.out {
        let permuted = apply_permutation(&m, &perm)?;
        write_matrix_market(&permuted, create(path)?).map_err(BenchError::io(path))?;
    }
    if let Some(path) = &job.perm_out {
        write_permutation(&perm, create(path)?).map_err(BenchError::io(path))?;
    }
    if let Some(path) = &job.report {
        let mut w = create(path)?;
        serde_json::to_writer_pretty(&mut w, &report).map_err(|source| BenchError::Json {
            path: path.clone(),
            source,
        })?;
        writeln!(w)
            .and_then(|_| w.flush())
            .map_err(BenchError::io(path))?;
    }
    Ok(report)
}
