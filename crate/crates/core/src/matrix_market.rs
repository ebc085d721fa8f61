//! Matrix Market coordinate format reader and writer.
//!
//! Supported headers are `%%MatrixMarket matrix coordinate F S` with field
//! `F` in {real, integer, pattern} and symmetry `S` in {symmetric, general}.
//! Symmetric files store one triangle; the reader mirrors it so the result
//! always holds the full symmetric pattern.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::matrix::{MatrixError, SparseSymMatrix};

#[derive(Debug, Error)]
pub enum MatrixMarketError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("complex matrices are not supported")]
    ComplexField,
    #[error("line {line}: malformed {what}")]
    Malformed { line: usize, what: &'static str },
    #[error("matrix is not square ({rows} x {cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("line {line}: index ({row}, {col}) out of range for a {n}x{n} matrix")]
    IndexOutOfRange {
        line: usize,
        row: usize,
        col: usize,
        n: usize,
    },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("general matrix is not structurally symmetric: ({row}, {col}) has no transpose (use symmetrize)")]
    NotSymmetric { row: usize, col: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    Symmetric,
    General,
}

/// Reader options.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Replace a structurally unsymmetric `general` matrix by its symmetric
    /// part (A + Aᵀ)/2 instead of rejecting it.
    pub symmetrize: bool,
}

/// Parses a Matrix Market stream with default options.
pub fn parse_matrix_market<R: BufRead>(source: R) -> Result<SparseSymMatrix, MatrixMarketError> {
    parse_matrix_market_with(source, ParseOptions::default())
}

pub fn parse_matrix_market_with<R: BufRead>(
    source: R,
    options: ParseOptions,
) -> Result<SparseSymMatrix, MatrixMarketError> {
    let mut lines = source.lines().enumerate().map(|(k, l)| (k + 1, l));

    let (field, symmetry) = match lines.next() {
        Some((line, text)) => parse_header(line, &text?)?,
        None => {
            return Err(MatrixMarketError::Header {
                line: 1,
                reason: "empty input".into(),
            })
        }
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    for (line, text) in lines {
        let text = text?;
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let Some((n, _, nnz)) = size else {
            let rows = parse_usize(tokens.next(), line, "size line")?;
            let cols = parse_usize(tokens.next(), line, "size line")?;
            let nnz = parse_usize(tokens.next(), line, "size line")?;
            if tokens.next().is_some() {
                return Err(MatrixMarketError::Malformed {
                    line,
                    what: "size line",
                });
            }
            if rows != cols {
                return Err(MatrixMarketError::NonSquare { rows, cols });
            }
            size = Some((rows, cols, nnz));
            triplets.reserve(nnz);
            continue;
        };
        if triplets.len() == nnz {
            return Err(MatrixMarketError::EntryCount {
                expected: nnz,
                found: nnz + 1,
            });
        }
        let row = parse_usize(tokens.next(), line, "entry")?;
        let col = parse_usize(tokens.next(), line, "entry")?;
        if row == 0 || col == 0 || row > n || col > n {
            return Err(MatrixMarketError::IndexOutOfRange { line, row, col, n });
        }
        let value = match field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => tokens
                .next()
                .and_then(|t| t.parse::<f64>().ok())
                .ok_or(MatrixMarketError::Malformed {
                    line,
                    what: "entry value",
                })?,
        };
        if tokens.next().is_some() {
            return Err(MatrixMarketError::Malformed {
                line,
                what: "entry",
            });
        }
        triplets.push((row - 1, col - 1, value));
    }

    let Some((n, _, nnz)) = size else {
        return Err(MatrixMarketError::Malformed {
            line: 0,
            what: "file: missing size line",
        });
    };
    if triplets.len() != nnz {
        return Err(MatrixMarketError::EntryCount {
            expected: nnz,
            found: triplets.len(),
        });
    }
    let with_values = field != Field::Pattern;

    let full = match symmetry {
        Symmetry::Symmetric => {
            let mut full = Vec::with_capacity(2 * triplets.len());
            for (i, j, v) in triplets {
                // Entries given in the upper triangle are read as their mirror.
                let (i, j) = if i >= j { (i, j) } else { (j, i) };
                full.push((i, j, v));
                if i != j {
                    full.push((j, i, v));
                }
            }
            full
        }
        Symmetry::General => {
            let general = SparseCoo::assemble(triplets);
            match general.first_unmatched() {
                None => general.entries,
                Some((row, col)) if !options.symmetrize => {
                    return Err(MatrixMarketError::NotSymmetric { row, col })
                }
                Some(_) => general.symmetric_part(),
            }
        }
    };
    Ok(SparseSymMatrix::from_triplets(n, &full, with_values)?)
}

/// Writes `m` in coordinate format.
///
/// Matrices with numerically symmetric (or no) values are written in
/// symmetric storage, lower triangle plus diagonal. A matrix whose values
/// differ between (i,j) and (j,i) is written as `general` so nothing is lost.
pub fn write_matrix_market<W: Write>(m: &SparseSymMatrix, sink: W) -> io::Result<()> {
    let mut w = io::BufWriter::new(sink);
    let field = if m.has_values() { "real" } else { "pattern" };
    let symmetric = m.is_numerically_symmetric();
    let storage = if symmetric { "symmetric" } else { "general" };
    writeln!(w, "%%MatrixMarket matrix coordinate {field} {storage}")?;
    let kept = |row: usize, col: usize| !symmetric || col <= row;
    let count = m.entries().filter(|&(r, c, _)| kept(r, c)).count();
    writeln!(w, "{} {} {}", m.n(), m.n(), count)?;
    for (row, col, value) in m.entries().filter(|&(r, c, _)| kept(r, c)) {
        match value {
            // `Display` for f64 prints the shortest string that parses back
            // to the same bits.
            Some(v) => writeln!(w, "{} {} {}", row + 1, col + 1, v)?,
            None => writeln!(w, "{} {}", row + 1, col + 1)?,
        }
    }
    w.flush()
}

fn parse_header(line: usize, text: &str) -> Result<(Field, Symmetry), MatrixMarketError> {
    let bad = |reason: &str| MatrixMarketError::Header {
        line,
        reason: reason.to_string(),
    };
    let tokens: Vec<String> = text
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if tokens.first().map(String::as_str) != Some("%%matrixmarket") {
        return Err(bad("missing %%MatrixMarket banner"));
    }
    if tokens.len() != 5 {
        return Err(bad(
            "expected `%%MatrixMarket matrix coordinate <field> <symmetry>`",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(bad("object must be `matrix`"));
    }
    if tokens[2] != "coordinate" {
        return Err(bad("only the coordinate format is supported"));
    }
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        "complex" => return Err(MatrixMarketError::ComplexField),
        _ => return Err(bad("unknown field")),
    };
    let symmetry = match tokens[4].as_str() {
        "symmetric" => Symmetry::Symmetric,
        "general" => Symmetry::General,
        "hermitian" => return Err(MatrixMarketError::ComplexField),
        _ => return Err(bad("symmetry must be `symmetric` or `general`")),
    };
    Ok((field, symmetry))
}

fn parse_usize(
    token: Option<&str>,
    line: usize,
    what: &'static str,
) -> Result<usize, MatrixMarketError> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or(MatrixMarketError::Malformed { line, what })
}

/// Duplicate-merged coordinate list of a `general` matrix.
struct SparseCoo {
    /// Sorted by (row, col), no duplicates.
    entries: Vec<(usize, usize, f64)>,
}

impl SparseCoo {
    fn assemble(mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|t| (t.0, t.1));
        let mut entries: Vec<(usize, usize, f64)> = Vec::with_capacity(triplets.len());
        for (i, j, v) in triplets {
            match entries.last_mut() {
                Some(last) if (last.0, last.1) == (i, j) => last.2 += v,
                _ => entries.push((i, j, v)),
            }
        }
        SparseCoo { entries }
    }

    fn lookup(&self, i: usize, j: usize) -> Option<f64> {
        self.entries
            .binary_search_by(|e| (e.0, e.1).cmp(&(i, j)))
            .ok()
            .map(|k| self.entries[k].2)
    }

    fn first_unmatched(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .find(|&&(i, j, _)| self.lookup(j, i).is_none())
            .map(|&(i, j, _)| (i, j))
    }

    /// Entries of (A + Aᵀ)/2 over the union pattern.
    fn symmetric_part(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for &(i, j, v) in &self.entries {
            if i == j {
                out.push((i, j, v));
                continue;
            }
            let t = self.lookup(j, i).unwrap_or(0.0);
            out.push((i, j, 0.5 * (v + t)));
            if self.lookup(j, i).is_none() {
                out.push((j, i, 0.5 * v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<SparseSymMatrix, MatrixMarketError> {
        parse_matrix_market(text.as_bytes())
    }

    const TRIDIAG: &str = "%%MatrixMarket matrix coordinate real symmetric
% a comment
3 3 5
1 1 2.0
2 1 -1.0
2 2 2.0
3 2 -1.0
3 3 2.0
";

    #[test]
    fn symmetric_expansion() {
        let m = parse(TRIDIAG).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.nnz(), 7);
        assert_eq!(m.get(0, 1), Some(-1.0));
        assert_eq!(m.get(1, 0), Some(-1.0));
        assert_eq!(m.row(1), &[0, 1, 2]);
    }

    #[test]
    fn pattern_twin_has_same_structure() {
        let pattern = TRIDIAG
            .replace("real", "pattern")
            .lines()
            .map(|l| {
                let t: Vec<&str> = l.split_whitespace().collect();
                if t.len() == 3 && !l.starts_with('%') && l != "3 3 5" {
                    format!("{} {}", t[0], t[1])
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        let p = parse(&pattern).unwrap();
        let r = parse(TRIDIAG).unwrap();
        assert!(p.values().is_none());
        assert_eq!(p.row_start(), r.row_start());
        assert_eq!(p.col_index(), r.col_index());
    }

    #[test]
    fn non_square_rejected() {
        let err = parse("%%MatrixMarket matrix coordinate real general\n3 4 0\n").unwrap_err();
        assert!(matches!(
            err,
            MatrixMarketError::NonSquare { rows: 3, cols: 4 }
        ));
    }

    #[test]
    fn complex_rejected() {
        let err = parse("%%MatrixMarket matrix coordinate complex symmetric\n1 1 1\n1 1 1 0\n")
            .unwrap_err();
        assert!(matches!(err, MatrixMarketError::ComplexField));
    }

    #[test]
    fn malformed_header_rejected() {
        for text in [
            "",
            "%MatrixMarket matrix coordinate real general\n1 1 0\n",
            "%%MatrixMarket matrix array real general\n1 1\n1\n",
            "%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 0\n",
        ] {
            assert!(
                matches!(parse(text), Err(MatrixMarketError::Header { .. })),
                "{text:?}"
            );
        }
    }

    #[test]
    fn out_of_range_index() {
        let err =
            parse("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n3 1\n").unwrap_err();
        assert!(matches!(
            err,
            MatrixMarketError::IndexOutOfRange { line: 3, .. }
        ));
        let err =
            parse("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n0 1\n").unwrap_err();
        assert!(matches!(err, MatrixMarketError::IndexOutOfRange { .. }));
    }

    #[test]
    fn entry_count_mismatch() {
        let err =
            parse("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 2\n1 1\n").unwrap_err();
        assert!(matches!(
            err,
            MatrixMarketError::EntryCount {
                expected: 2,
                found: 1
            }
        ));
        let err = parse("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n1 1\n2 2\n")
            .unwrap_err();
        assert!(matches!(err, MatrixMarketError::EntryCount { .. }));
    }

    #[test]
    fn general_asymmetric_needs_symmetrize() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 1 1\n2 1 4\n2 2 1\n";
        let err = parse(text).unwrap_err();
        assert!(matches!(
            err,
            MatrixMarketError::NotSymmetric { row: 1, col: 0 }
        ));

        let m =
            parse_matrix_market_with(text.as_bytes(), ParseOptions { symmetrize: true }).unwrap();
        assert_eq!(m.nnz(), 4);
        assert_eq!(m.get(1, 0), Some(2.0));
        assert_eq!(m.get(0, 1), Some(2.0));
    }

    #[test]
    fn general_symmetric_accepted_and_duplicates_summed() {
        let text =
            "%%MatrixMarket matrix coordinate integer general\n2 2 4\n1 2 3\n2 1 3\n1 2 1\n2 2 5\n";
        let m = parse(text).unwrap();
        assert_eq!(m.get(0, 1), Some(4.0));
        assert_eq!(m.get(1, 0), Some(3.0));
        assert_eq!(m.nnz(), 3);
    }

    #[test]
    fn round_trip_tridiagonal() {
        let m = parse(TRIDIAG).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&m, &mut buf).unwrap();
        assert_eq!(parse_matrix_market(buf.as_slice()).unwrap(), m);
    }

    #[test]
    fn identity_writes_two_entries() {
        let mut buf = Vec::new();
        write_matrix_market(&SparseSymMatrix::identity(2), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n2 2 1\n"
        );
    }

    #[test]
    fn spd_values_survive_byte_exact() {
        let m = SparseSymMatrix::from_triplets(
            2,
            &[(0, 0, 4.0), (0, 1, 2.0), (1, 0, 2.0), (1, 1, 3.0)],
            true,
        )
        .unwrap();
        let mut first = Vec::new();
        write_matrix_market(&m, &mut first).unwrap();
        let back = parse_matrix_market(first.as_slice()).unwrap();
        let mut second = Vec::new();
        write_matrix_market(&back, &mut second).unwrap();
        assert_eq!(first, second);
        assert_eq!(back.values().unwrap(), &[4.0, 2.0, 2.0, 3.0]);

        let awkward = SparseSymMatrix::from_triplets(1, &[(0, 0, 0.1 + 0.2)], true).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&awkward, &mut buf).unwrap();
        let back = parse_matrix_market(buf.as_slice()).unwrap();
        assert_eq!(
            back.values().unwrap()[0].to_bits(),
            (0.1f64 + 0.2).to_bits()
        );
    }

    #[test]
    fn unsymmetric_values_round_trip_as_general() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 3\n1 2 3\n2 1 1\n2 2 5\n";
        let m = parse(text).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&m, &mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).contains("general"));
        assert_eq!(parse_matrix_market(buf.as_slice()).unwrap(), m);
    }
}
