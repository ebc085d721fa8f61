//! Corpus tooling around `rcmpp`: loading Matrix Market directories,
//! comparing the RCM variants across them, timing envelope solves, and
//! writing the results as CSV or JSON.

pub mod config;
pub mod corpus;
pub mod error;
pub mod output;
pub mod reorder;
pub mod solve;
pub mod sweep;
pub mod synth;

pub use config::{BenchConfig, OutputFormat};
pub use corpus::{load_corpus, read_matrix, Corpus, CorpusEntry, SkippedMatrix};
pub use error::BenchError;
pub use output::{read_csv, summary_path, write_csv, write_report};
pub use reorder::{read_permutation, run_reorder, write_permutation, ReorderJob};
pub use solve::{relative_residual, run_solve_bench, time_solve, SolveOutcome, SolveRow};
pub use sweep::{finder_medians, median, run_bench, BenchOutcome, BenchRow, SummaryRecord};
