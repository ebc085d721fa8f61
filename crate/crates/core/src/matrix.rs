//! Compressed sparse row storage for structurally symmetric square matrices.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatrixError {
    #[error("row_start must have length n + 1 = {expected}, got {got}")]
    RowStartLength { expected: usize, got: usize },
    #[error("row_start must start at 0, be nondecreasing and end at the entry count")]
    RowStartInvalid,
    #[error("entry ({row}, {col}) is outside a {n}x{n} matrix")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("row {row} has unsorted or duplicate column indices")]
    UnsortedRow { row: usize },
    #[error("{got} values supplied for {expected} stored entries")]
    ValueCount { expected: usize, got: usize },
    #[error("pattern is not symmetric: ({row}, {col}) stored without its transpose")]
    NotSymmetric { row: usize, col: usize },
}

/// A square matrix whose sparsity pattern is symmetric, stored row-wise.
///
/// Every stored entry is a structural nonzero, including explicit zeros.
/// Pattern-only matrices carry no values.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    row_start: Vec<usize>,
    col_index: Vec<usize>,
    values: Option<Vec<f64>>,
}

impl SparseSymMatrix {
    /// Validates raw CSR arrays and wraps them.
    pub fn from_parts(
        n: usize,
        row_start: Vec<usize>,
        col_index: Vec<usize>,
        values: Option<Vec<f64>>,
    ) -> Result<Self, MatrixError> {
        if row_start.len() != n + 1 {
            return Err(MatrixError::RowStartLength {
                expected: n + 1,
                got: row_start.len(),
            });
        }
        if row_start[0] != 0
            || row_start[n] != col_index.len()
            || row_start.windows(2).any(|w| w[0] > w[1])
        {
            return Err(MatrixError::RowStartInvalid);
        }
        if let Some(v) = &values {
            if v.len() != col_index.len() {
                return Err(MatrixError::ValueCount {
                    expected: col_index.len(),
                    got: v.len(),
                });
            }
        }
        for row in 0..n {
            let cols = &col_index[row_start[row]..row_start[row + 1]];
            if let Some(&col) = cols.iter().find(|&&c| c >= n) {
                return Err(MatrixError::IndexOutOfRange { row, col, n });
            }
            if cols.windows(2).any(|w| w[0] >= w[1]) {
                return Err(MatrixError::UnsortedRow { row });
            }
        }
        let m = SparseSymMatrix {
            n,
            row_start,
            col_index,
            values,
        };
        for row in 0..n {
            for &col in m.row(row) {
                if m.find(col, row).is_none() {
                    return Err(MatrixError::NotSymmetric { row, col });
                }
            }
        }
        Ok(m)
    }

    /// Assembles a matrix from coordinate triplets (0-based).
    ///
    /// Duplicates are merged by summing their values. With `with_values`
    /// false the values are ignored and a pattern matrix is produced. The
    /// resulting pattern must be symmetric.
    pub fn from_triplets(
        n: usize,
        triplets: &[(usize, usize, f64)],
        with_values: bool,
    ) -> Result<Self, MatrixError> {
        let mut sorted = triplets.to_vec();
        for &(row, col, _) in &sorted {
            if row >= n || col >= n {
                return Err(MatrixError::IndexOutOfRange { row, col, n });
            }
        }
        sorted.sort_by_key(|t| (t.0, t.1));

        let mut row_start = vec![0usize; n + 1];
        let mut col_index = Vec::with_capacity(sorted.len());
        let mut values = Vec::with_capacity(sorted.len());
        let mut last: Option<(usize, usize)> = None;
        for (row, col, v) in sorted {
            if last == Some((row, col)) {
                *values.last_mut().expect("merged entry has a predecessor") += v;
                continue;
            }
            last = Some((row, col));
            row_start[row + 1] += 1;
            col_index.push(col);
            values.push(v);
        }
        for i in 0..n {
            row_start[i + 1] += row_start[i];
        }
        Self::from_parts(n, row_start, col_index, with_values.then_some(values))
    }

    /// The n x n identity, with values.
    pub fn identity(n: usize) -> Self {
        SparseSymMatrix {
            n,
            row_start: (0..=n).collect(),
            col_index: (0..n).collect(),
            values: Some(vec![1.0; n]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (both triangles).
    pub fn nnz(&self) -> usize {
        self.col_index.len()
    }

    pub fn row_start(&self) -> &[usize] {
        &self.row_start
    }

    pub fn col_index(&self) -> &[usize] {
        &self.col_index
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    pub fn has_values(&self) -> bool {
        self.values.is_some()
    }

    /// Column indices stored in `row`, ascending.
    #[inline]
    pub fn row(&self, row: usize) -> &[usize] {
        &self.col_index[self.row_start[row]..self.row_start[row + 1]]
    }

    /// Values stored in `row`, aligned with [`Self::row`].
    #[inline]
    pub fn row_values(&self, row: usize) -> Option<&[f64]> {
        self.values
            .as_ref()
            .map(|v| &v[self.row_start[row]..self.row_start[row + 1]])
    }

    /// Position of entry (row, col) in the entry arrays, if stored.
    pub fn find(&self, row: usize, col: usize) -> Option<usize> {
        self.row(row)
            .binary_search(&col)
            .ok()
            .map(|k| self.row_start[row] + k)
    }

    /// Value at (row, col); `None` when not stored or pattern-only.
    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        let k = self.find(row, col)?;
        self.values.as_ref().map(|v| v[k])
    }

    /// Iterates stored entries as (row, col, value), value `None` for patterns.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Option<f64>)> + '_ {
        (0..self.n).flat_map(move |row| {
            (self.row_start[row]..self.row_start[row + 1])
                .map(move |k| (row, self.col_index[k], self.values.as_ref().map(|v| v[k])))
        })
    }

    /// True when stored values satisfy a(i,j) == a(j,i) exactly.
    pub fn is_numerically_symmetric(&self) -> bool {
        match &self.values {
            None => true,
            Some(values) => self
                .entries()
                .enumerate()
                .all(|(k, (row, col, _))| row <= col || self.get(col, row) == Some(values[k])),
        }
    }

    /// y = A x. Pattern matrices are treated as having unit entries.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        (0..self.n)
            .map(|row| {
                let cols = self.row(row);
                match self.row_values(row) {
                    Some(vals) => cols.iter().zip(vals).map(|(&c, &v)| v * x[c]).sum(),
                    None => cols.iter().map(|&c| x[c]).sum(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiagonal(n: usize) -> SparseSymMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        SparseSymMatrix::from_triplets(n, &t, true).unwrap()
    }

    #[test]
    fn triplets_merge_duplicates() {
        let m = SparseSymMatrix::from_triplets(
            2,
            &[
                (0, 0, 1.0),
                (0, 0, 2.5),
                (1, 0, 1.0),
                (0, 1, 1.0),
                (1, 1, 1.0),
            ],
            true,
        )
        .unwrap();
        assert_eq!(m.nnz(), 4);
        assert_eq!(m.get(0, 0), Some(3.5));
    }

    #[test]
    fn rejects_asymmetric_pattern() {
        let err = SparseSymMatrix::from_triplets(2, &[(1, 0, 1.0)], false).unwrap_err();
        assert_eq!(err, MatrixError::NotSymmetric { row: 1, col: 0 });
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(matches!(
            SparseSymMatrix::from_parts(2, vec![0, 1], vec![0], None),
            Err(MatrixError::RowStartLength { .. })
        ));
        assert!(matches!(
            SparseSymMatrix::from_parts(2, vec![0, 2, 2], vec![1, 0], None),
            Err(MatrixError::UnsortedRow { row: 0 })
        ));
        assert!(matches!(
            SparseSymMatrix::from_parts(1, vec![0, 1], vec![3], None),
            Err(MatrixError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn mul_vec_tridiagonal() {
        let m = tridiagonal(4);
        assert_eq!(m.mul_vec(&[1.0; 4]), vec![1.0, 0.0, 0.0, 1.0]);
        assert!(m.is_numerically_symmetric());
    }
}
