//! CSV and JSON writers. Both formats carry the same columns: JSON is an
//! object with `rows` and `summary` arrays whose fields match the CSV headers.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::BenchError;
use crate::sweep::SummaryRecord;

/// `bench.csv` -> `bench.summary.csv`.
pub fn summary_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.summary.{ext}"))
}

pub fn write_csv<T: Serialize>(path: &Path, records: &[T]) -> Result<(), BenchError> {
    let csv_err = |source| BenchError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(csv_err)?;
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(BenchError::io(path))
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, BenchError> {
    let csv_err = |source| BenchError::Csv {
        path: path.to_path_buf(),
        source,
    };
    csv::Reader::from_path(path)
        .map_err(csv_err)?
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(csv_err)
}

#[derive(Serialize)]
struct JsonReport<'a, R> {
    rows: &'a [R],
    summary: &'a [SummaryRecord],
}

/// Writes rows and summary. CSV goes to `path` and its `.summary` sibling;
/// JSON goes to `path` as one document.
pub fn write_report<R: Serialize>(
    path: &Path,
    format: OutputFormat,
    rows: &[R],
    summary: &[SummaryRecord],
) -> Result<Vec<PathBuf>, BenchError> {
    match format {
        OutputFormat::Csv => {
            write_csv(path, rows)?;
            let sp = summary_path(path);
            write_csv(&sp, summary)?;
            Ok(vec![path.to_path_buf(), sp])
        }
        OutputFormat::Json => {
            let mut w = File::create(path)
                .map(BufWriter::new)
                .map_err(BenchError::io(path))?;
            serde_json::to_writer_pretty(&mut w, &JsonReport { rows, summary }).map_err(
                |source| BenchError::Json {
                    path: path.to_path_buf(),
                    source,
                },
            )?;
            writeln!(w)
                .and_then(|_| w.flush())
                .map_err(BenchError::io(path))?;
            Ok(vec![path.to_path_buf()])
        }
    }
}
