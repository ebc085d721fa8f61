//! Bandwidth and profile of a symmetric pattern, plus the series statistics
//! used when comparing orderings across a corpus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::SparseSymMatrix;
use crate::ordering::Permutation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("series is empty")]
    EmptySeries,
    #[error("smoothing span must be at least 1")]
    ZeroSpan,
    #[error("series indices must be strictly increasing (at position {0})")]
    NonIncreasingIndex(usize),
    #[error("no results to compare")]
    NoResults,
    #[error("result {0} does not cover the same algorithms as the first result")]
    InconsistentAlgorithms(usize),
}

/// Maximum |i - j| over stored entries.
pub fn bandwidth(m: &SparseSymMatrix) -> usize {
    (0..m.n())
        .filter_map(|i| m.row(i).first().map(|&first| i.saturating_sub(first)))
        .max()
        .unwrap_or(0)
}

/// Sum over rows of the distance from the first stored column to the
/// diagonal. Rows whose first entry lies right of the diagonal add nothing.
pub fn profile(m: &SparseSymMatrix) -> usize {
    (0..m.n())
        .map(|i| m.row(i).first().map_or(0, |&first| i.saturating_sub(first)))
        .sum()
}

/// Bandwidth of P·A·Pᵀ computed straight from the permutation.
pub fn permuted_bandwidth(m: &SparseSymMatrix, p: &Permutation) -> usize {
    let new = p.new_of_old();
    (0..m.n())
        .flat_map(|i| m.row(i).iter().map(move |&j| new[i].abs_diff(new[j])))
        .max()
        .unwrap_or(0)
}

/// Profile of P·A·Pᵀ computed straight from the permutation.
pub fn permuted_profile(m: &SparseSymMatrix, p: &Permutation) -> usize {
    let new = p.new_of_old();
    (0..m.n())
        .map(|i| {
            let row = new[i];
            m.row(i)
                .iter()
                .map(|&j| new[j])
                .min()
                .map_or(0, |first| row.saturating_sub(first))
        })
        .sum()
}

/// (a - b) / a, or `None` when `a` is zero.
pub fn relative_difference(a: f64, b: f64) -> Option<f64> {
    (a != 0.0).then(|| (a - b) / a)
}

/// A value tied to a matrix's position in size order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub index: usize,
    pub value: f64,
}

/// Recursive exponential smoothing with factor 2 / (span + 1).
pub fn exponential_smoothing(
    series: &[SeriesPoint],
    span: usize,
) -> Result<Vec<SeriesPoint>, MetricsError> {
    if span == 0 {
        return Err(MetricsError::ZeroSpan);
    }
    let first = series.first().ok_or(MetricsError::EmptySeries)?;
    if let Some(k) = series.windows(2).position(|w| w[0].index >= w[1].index) {
        return Err(MetricsError::NonIncreasingIndex(k + 1));
    }
    let alpha = 2.0 / (span as f64 + 1.0);
    let mut level = first.value;
    Ok(series
        .iter()
        .enumerate()
        .map(|(k, p)| {
            if k > 0 {
                level = alpha * p.value + (1.0 - alpha) * level;
            }
            SeriesPoint {
                index: p.index,
                value: level,
            }
        })
        .collect())
}

/// Fraction of matrices on which each algorithm attains the minimum value.
/// Every algorithm tied at the minimum is credited.
pub fn proportion_optimal<K: Ord + Clone>(
    results: &[BTreeMap<K, f64>],
) -> Result<BTreeMap<K, f64>, MetricsError> {
    let first = results.first().ok_or(MetricsError::NoResults)?;
    let mut wins: BTreeMap<K, usize> = first.keys().map(|k| (k.clone(), 0)).collect();
    for (i, result) in results.iter().enumerate() {
        if result.len() != first.len() || !result.keys().all(|k| first.contains_key(k)) {
            return Err(MetricsError::InconsistentAlgorithms(i));
        }
        let best = result.values().copied().fold(f64::INFINITY, f64::min);
        for (k, &v) in result {
            if v == best {
                *wins.get_mut(k).expect("keys checked above") += 1;
            }
        }
    }
    let total = results.len() as f64;
    Ok(wins
        .into_iter()
        .map(|(k, w)| (k, w as f64 / total))
        .collect())
}
