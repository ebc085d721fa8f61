use std::path::PathBuf;
use std::str::FromStr;

use rcmpp::{Algorithm, StartPolicy};
use serde::{Deserialize, Serialize};

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(BenchError::Config(format!(
                "unknown output format `{other}`"
            ))),
        }
    }
}

/// Settings for a corpus sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchConfig {
    pub corpus_dir: PathBuf,
    pub algorithms: Vec<Algorithm>,
    pub start_policy: StartPolicy,
    pub smoothing_span: usize,
    /// Finder runs per (matrix, algorithm); the median is reported.
    pub finder_repeats: usize,
    pub solve: bool,
    /// Factor/solve runs per (matrix, algorithm) in the solve sweep.
    pub solve_repeats: usize,
    pub output_format: OutputFormat,
    pub output_path: PathBuf,
    /// Worker threads; each matrix is handled by one worker.
    pub jobs: usize,
    /// Symmetrize general files with asymmetric patterns instead of skipping them.
    pub symmetrize: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            corpus_dir: PathBuf::from("."),
            algorithms: Algorithm::REORDERING.to_vec(),
            start_policy: StartPolicy::default(),
            smoothing_span: 10,
            finder_repeats: 100,
            solve: false,
            solve_repeats: 3,
            output_format: OutputFormat::Csv,
            output_path: PathBuf::from("bench.csv"),
            jobs: 1,
            symmetrize: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        if self.finder_repeats == 0 {
            return Err(BenchError::Config(
                "finder_repeats must be at least 1".into(),
            ));
        }
        if self.solve_repeats == 0 {
            return Err(BenchError::Config(
                "solve_repeats must be at least 1".into(),
            ));
        }
        if self.smoothing_span == 0 {
            return Err(BenchError::Config(
                "smoothing_span must be at least 1".into(),
            ));
        }
        if self.jobs == 0 {
            return Err(BenchError::Config("jobs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(BenchError::Config("no algorithms selected".into()));
        }
        if self.algorithms.contains(&Algorithm::None) {
            return Err(BenchError::Config(
                "`none` is not a reordering algorithm; the solve sweep adds it as a baseline"
                    .into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = BenchConfig::default();
        c.validate().unwrap();
        assert_eq!(c.finder_repeats, 100);
        assert_eq!(c.algorithms.len(), 3);
    }

    #[test]
    fn rejects_zero_counts() {
        for f in [
            |c: &mut BenchConfig| c.finder_repeats = 0,
            |c: &mut BenchConfig| c.smoothing_span = 0,
            |c: &mut BenchConfig| c.solve_repeats = 0,
            |c: &mut BenchConfig| c.algorithms.clear(),
            |c: &mut BenchConfig| c.algorithms.push(Algorithm::None),
        ] {
            let mut c = BenchConfig::default();
            f(&mut c);
            assert!(matches!(c.validate(), Err(BenchError::Config(_))));
        }
    }

    #[test]
    fn format_names() {
        assert_eq!("CSV".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("json".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
