//! Envelope Cholesky timings on reordered SPD matrices.

use std::collections::BTreeMap;
use std::time::Instant;

use rcmpp::{
    apply_permutation, envelope_cholesky, profile, rcm_pipeline, Algorithm, SparseSymMatrix,
    StartPolicy,
};
use serde::{Deserialize, Serialize};

use crate::config::BenchConfig;
use crate::corpus::{Corpus, CorpusEntry, SkippedMatrix};
use crate::error::BenchError;
use crate::sweep::{
    for_each_matrix, median, relative_difference_series, skipped_records, SummaryRecord,
};

/// One (matrix, algorithm) solve. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRow {
    pub matrix: String,
    pub n: usize,
    pub nnz: usize,
    pub algorithm: Algorithm,
    pub profile: usize,
    /// Stored factor entries, profile + n.
    pub factor_entries: usize,
    pub factor_time_ns: u64,
    pub solve_time_ns: u64,
    /// Median of factor + solve over the repeats.
    pub total_time_ns: u64,
    /// ‖A x − b‖₂ / ‖b‖₂ for b = A·1.
    pub residual: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub rows: Vec<SolveRow>,
    pub summary: Vec<SummaryRecord>,
}

fn ns(t: Instant) -> u64 {
    u64::try_from(t.elapsed().as_nanos()).unwrap_or(u64::MAX)
}

pub fn relative_residual(m: &SparseSymMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = m.mul_vec(x);
    let r = ax
        .iter()
        .zip(b)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let nb = b.iter().map(|b| b * b).sum::<f64>().sqrt();
    if nb == 0.0 {
        r
    } else {
        r / nb
    }
}

/// Factors and solves `m` `repeats` times.
pub fn time_solve(
    name: &str,
    m: &SparseSymMatrix,
    algorithm: Algorithm,
    repeats: usize,
) -> Result<SolveRow, BenchError> {
    let b = m.mul_vec(&vec![1.0; m.n()]);
    let mut factor_ns = Vec::with_capacity(repeats);
    let mut solve_ns = Vec::with_capacity(repeats);
    let mut total_ns = Vec::with_capacity(repeats);
    let mut x = Vec::new();
    let mut factor_entries = 0;
    for _ in 0..repeats {
        let t = Instant::now();
        let factor = envelope_cholesky(m)?;
        let tf = ns(t);
        let t = Instant::now();
        x = factor.solve(&b)?;
        let ts = ns(t);
        factor_entries = factor.stored_entries();
        factor_ns.push(tf);
        solve_ns.push(ts);
        total_ns.push(tf.saturating_add(ts));
    }
    Ok(SolveRow {
        matrix: name.to_string(),
        n: m.n(),
        nnz: m.nnz(),
        algorithm,
        profile: profile(m),
        factor_entries,
        factor_time_ns: median(&mut factor_ns),
        solve_time_ns: median(&mut solve_ns),
        total_time_ns: median(&mut total_ns),
        residual: relative_residual(m, &x, &b),
    })
}

fn solve_matrix(
    entry: &CorpusEntry,
    algorithms: &[Algorithm],
    policy: StartPolicy,
    repeats: usize,
) -> Result<Result<Vec<SolveRow>, SkippedMatrix>, BenchError> {
    let m = &entry.matrix;
    let skip = |reason: String| {
        Ok(Err(SkippedMatrix {
            matrix: entry.name.clone(),
            reason,
        }))
    };
    if !m.has_values() {
        return skip("pattern matrix has no values to factor".to_string());
    }
    // Positive definiteness is a property of the matrix, not the ordering,
    // so one trial factorization of the input decides.
    if let Err(e) = envelope_cholesky(m) {
        return skip(e.to_string());
    }
    let mut rows = Vec::with_capacity(algorithms.len());
    for &algorithm in algorithms {
        let (perm, _) = rcm_pipeline(m, algorithm, policy)?;
        let permuted = apply_permutation(m, &perm)?;
        match time_solve(&entry.name, &permuted, algorithm, repeats) {
            Ok(row) => rows.push(row),
            Err(BenchError::Solver(e)) => return skip(format!("{algorithm}: {e}")),
            Err(e) => return Err(e),
        }
    }
    Ok(Ok(rows))
}

/// Solves every SPD corpus matrix after each configured reordering and
/// without reordering. Matrices that are not SPD are listed as skipped.
pub fn run_solve_bench(corpus: &Corpus, config: &BenchConfig) -> Result<SolveOutcome, BenchError> {
    config.validate()?;
    if corpus.entries.is_empty() {
        return Err(BenchError::EmptyCorpus(config.corpus_dir.clone()));
    }
    let mut algorithms = vec![Algorithm::None];
    algorithms.extend(config.algorithms.iter().copied());

    let results = for_each_matrix(corpus, config.jobs, |e| {
        solve_matrix(e, &algorithms, config.start_policy, config.solve_repeats)
    })?;

    let mut rows = Vec::new();
    let mut skipped = corpus.skipped.clone();
    let mut names = Vec::new();
    let mut totals: Vec<BTreeMap<Algorithm, f64>> = Vec::new();
    for result in results {
        match result {
            Ok(matrix_rows) => {
                names.push(matrix_rows[0].matrix.clone());
                totals.push(
                    matrix_rows
                        .iter()
                        .map(|r| (r.algorithm, r.total_time_ns as f64))
                        .collect(),
                );
                rows.extend(matrix_rows);
            }
            Err(s) => {
                log::warn!("skipping {}: {}", s.matrix, s.reason);
                skipped.push(s);
            }
        }
    }

    let mut summary = Vec::new();
    if config.algorithms.contains(&Algorithm::MindRcm) {
        summary = relative_difference_series(
            &totals,
            &names,
            Algorithm::MindRcm,
            "total_time_ns",
            config.smoothing_span,
        )?;
    }
    summary.extend(skipped_records(&Corpus {
        entries: Vec::new(),
        skipped,
    }));
    Ok(SolveOutcome { rows, summary })
}
