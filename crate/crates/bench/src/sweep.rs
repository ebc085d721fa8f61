//! Corpus-wide reordering comparison.

use std::collections::BTreeMap;
use std::time::Instant;

use log::info;
use rayon::prelude::*;
use rcmpp::{
    connected_components, exponential_smoothing, find_start_nodes, proportion_optimal,
    rcm_pipeline, relative_difference, AdjacencyGraph, Algorithm, ComponentSet, Finder,
    SeriesPoint, StartPolicy,
};
use serde::{Deserialize, Serialize};

use crate::config::BenchConfig;
use crate::corpus::{Corpus, CorpusEntry};
use crate::error::BenchError;

/// One (matrix, algorithm) result. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub matrix: String,
    pub n: usize,
    pub nnz: usize,
    pub algorithm: Algorithm,
    /// One start node per component, `;`-separated.
    pub start_nodes: String,
    pub bandwidth_before: usize,
    pub bandwidth_after: usize,
    pub profile_before: usize,
    pub profile_after: usize,
    pub finder_time_ns: u64,
    pub ordering_time_ns: u64,
}

/// Long-format summary line shared by the CSV and JSON outputs.
///
/// `section` is one of `proportion_optimal`, `relative_difference`,
/// `relative_difference_smoothed`, `finder_time_ns`, `skipped`. Series
/// entries carry the matrix position in size order as `index`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub section: String,
    pub algorithm: String,
    pub metric: String,
    pub index: Option<usize>,
    pub matrix: String,
    pub value: Option<f64>,
    pub note: String,
}

impl SummaryRecord {
    pub(crate) fn new(section: &str, algorithm: &str, metric: &str) -> Self {
        SummaryRecord {
            section: section.to_string(),
            algorithm: algorithm.to_string(),
            metric: metric.to_string(),
            index: None,
            matrix: String::new(),
            value: None,
            note: String::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    pub summary: Vec<SummaryRecord>,
}

impl BenchOutcome {
    /// Looks up a `proportion_optimal` entry.
    pub fn proportion(&self, metric: &str, algorithm: Algorithm) -> Option<f64> {
        self.summary
            .iter()
            .find(|r| {
                r.section == "proportion_optimal"
                    && r.metric == metric
                    && r.algorithm == algorithm.name()
            })
            .and_then(|r| r.value)
    }

    /// Series points of one section, metric and algorithm, in index order.
    pub fn series(&self, section: &str, metric: &str, algorithm: Algorithm) -> Vec<SummaryRecord> {
        self.summary
            .iter()
            .filter(|r| {
                r.section == section && r.metric == metric && r.algorithm == algorithm.name()
            })
            .cloned()
            .collect()
    }
}

pub fn median(samples: &mut [u64]) -> u64 {
    assert!(!samples.is_empty(), "median of no samples");
    samples.sort_unstable();
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        // Average of the middle pair without overflow.
        samples[mid - 1] / 2 + samples[mid] / 2 + (samples[mid - 1] % 2 + samples[mid] % 2) / 2
    }
}

/// Median finder time for each of `finders`, timed round-robin so drift in
/// machine load hits every finder alike.
pub fn finder_medians(
    g: &AdjacencyGraph,
    components: &ComponentSet,
    finders: &[Finder],
    policy: StartPolicy,
    repeats: usize,
) -> Result<Vec<u64>, BenchError> {
    let mut samples = vec![Vec::with_capacity(repeats); finders.len()];
    for _ in 0..repeats {
        for (k, &finder) in finders.iter().enumerate() {
            let t = Instant::now();
            let starts = find_start_nodes(g, components, finder, policy)?;
            let elapsed = t.elapsed();
            std::hint::black_box(starts);
            samples[k].push(u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX));
        }
    }
    Ok(samples.iter_mut().map(|s| median(s)).collect())
}

fn join_nodes(nodes: &[usize]) -> String {
    nodes
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn bench_matrix(entry: &CorpusEntry, config: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    let m = &entry.matrix;
    let g = AdjacencyGraph::from_matrix(m);
    let components = connected_components(&g);
    let finders: Vec<Finder> = config
        .algorithms
        .iter()
        .filter_map(|a| a.finder())
        .collect();
    let medians = finder_medians(
        &g,
        &components,
        &finders,
        config.start_policy,
        config.finder_repeats,
    )?;

    config
        .algorithms
        .iter()
        .zip(medians)
        .map(|(&algorithm, finder_time_ns)| {
            let (_, report) = rcm_pipeline(m, algorithm, config.start_policy)?;
            Ok(BenchRow {
                matrix: entry.name.clone(),
                n: m.n(),
                nnz: m.nnz(),
                algorithm,
                start_nodes: join_nodes(&report.start_nodes),
                bandwidth_before: report.bandwidth_before,
                bandwidth_after: report.bandwidth_after,
                profile_before: report.profile_before,
                profile_after: report.profile_after,
                finder_time_ns,
                ordering_time_ns: report.ordering_time_ns,
            })
        })
        .collect()
}

/// Runs `f` on every corpus entry with `jobs` workers, keeping corpus order.
pub(crate) fn for_each_matrix<T: Send>(
    corpus: &Corpus,
    jobs: usize,
    f: impl Fn(&CorpusEntry) -> Result<T, BenchError> + Sync,
) -> Result<Vec<T>, BenchError> {
    if jobs <= 1 {
        return corpus.entries.iter().map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| BenchError::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| corpus.entries.par_iter().map(&f).collect())
}

/// Relative difference of each algorithm against `baseline`, per matrix, in
/// corpus order; matrices where the baseline value is zero are left out.
pub(crate) fn relative_difference_series(
    values: &[BTreeMap<Algorithm, f64>],
    names: &[String],
    baseline: Algorithm,
    metric: &str,
    span: usize,
) -> Result<Vec<SummaryRecord>, BenchError> {
    let mut out = Vec::new();
    let Some(algorithms) = values
        .first()
        .map(|v| v.keys().copied().collect::<Vec<_>>())
    else {
        return Ok(out);
    };
    for algorithm in algorithms.into_iter().filter(|&a| a != baseline) {
        let mut raw = Vec::new();
        for (index, row) in values.iter().enumerate() {
            match relative_difference(row[&baseline], row[&algorithm]) {
                Some(value) => raw.push(SeriesPoint { index, value }),
                None => {
                    let mut r = SummaryRecord::new("relative_difference", algorithm.name(), metric);
                    r.index = Some(index);
                    r.matrix = names[index].clone();
                    r.note = format!("{} value is zero", baseline.name());
                    out.push(r);
                }
            }
        }
        if raw.is_empty() {
            continue;
        }
        let smoothed = exponential_smoothing(&raw, span)?;
        for (section, series) in [
            ("relative_difference", &raw),
            ("relative_difference_smoothed", &smoothed),
        ] {
            for p in series.iter() {
                let mut r = SummaryRecord::new(section, algorithm.name(), metric);
                r.index = Some(p.index);
                r.matrix = names[p.index].clone();
                r.value = Some(p.value);
                out.push(r);
            }
        }
    }
    out.sort_by(|a, b| {
        (&a.section, &a.algorithm, a.index).cmp(&(&b.section, &b.algorithm, b.index))
    });
    Ok(out)
}

pub(crate) fn skipped_records(corpus: &Corpus) -> Vec<SummaryRecord> {
    corpus
        .skipped
        .iter()
        .map(|s| {
            let mut r = SummaryRecord::new("skipped", "", "");
            r.matrix = s.matrix.clone();
            r.note = s.reason.clone();
            r
        })
        .collect()
}

fn summarize(
    rows: &[BenchRow],
    corpus: &Corpus,
    config: &BenchConfig,
) -> Result<Vec<SummaryRecord>, BenchError> {
    let names: Vec<String> = corpus.entries.iter().map(|e| e.name.clone()).collect();
    let per_matrix = |metric: fn(&BenchRow) -> f64| -> Vec<BTreeMap<Algorithm, f64>> {
        rows.chunks(config.algorithms.len())
            .map(|chunk| chunk.iter().map(|r| (r.algorithm, metric(r))).collect())
            .collect()
    };
    let bandwidth = per_matrix(|r| r.bandwidth_after as f64);
    let profile = per_matrix(|r| r.profile_after as f64);

    let mut summary = Vec::new();
    for (metric, values) in [("bandwidth", &bandwidth), ("profile", &profile)] {
        for (algorithm, p) in proportion_optimal(values)? {
            let mut r = SummaryRecord::new("proportion_optimal", algorithm.name(), metric);
            r.value = Some(p);
            r.note = "ties credit every tied algorithm".to_string();
            summary.push(r);
        }
    }

    if config.algorithms.contains(&Algorithm::MindRcm) {
        for (metric, values) in [("bandwidth", &bandwidth), ("profile", &profile)] {
            summary.extend(relative_difference_series(
                values,
                &names,
                Algorithm::MindRcm,
                metric,
                config.smoothing_span,
            )?);
        }
    } else {
        info!("MIND_RCM not selected; relative-difference series omitted");
    }

    for row in rows {
        let mut r = SummaryRecord::new("finder_time_ns", row.algorithm.name(), "finder_time_ns");
        r.index = names.iter().position(|n| *n == row.matrix);
        r.matrix = row.matrix.clone();
        r.value = Some(row.finder_time_ns as f64);
        summary.push(r);
    }
    summary.extend(skipped_records(corpus));
    Ok(summary)
}

/// Reorders every corpus matrix with every configured algorithm and builds
/// the summary statistics.
pub fn run_bench(corpus: &Corpus, config: &BenchConfig) -> Result<BenchOutcome, BenchError> {
    config.validate()?;
    if corpus.entries.is_empty() {
        return Err(BenchError::EmptyCorpus(config.corpus_dir.clone()));
    }
    let rows: Vec<BenchRow> = for_each_matrix(corpus, config.jobs, |e| bench_matrix(e, config))?
        .into_iter()
        .flatten()
        .collect();
    let summary = summarize(&rows, corpus, config)?;
    Ok(BenchOutcome { rows, summary })
}
