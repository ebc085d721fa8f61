//! Envelope (skyline) Cholesky factorization.
//!
//! Row `i` of the factor is stored densely from `first_col[i]`, the first
//! stored column of row `i` of A, up to the diagonal. Cholesky fill never
//! leaves this envelope, so the factor holds exactly `profile(A) + n`
//! entries and the work depends on the ordering only through the profile.

use thiserror::Error;

use crate::matrix::SparseSymMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("matrix has no numeric values")]
    MissingValues,
    #[error("non-positive pivot {pivot:e} at row {row}: matrix is not positive definite")]
    NotPositiveDefinite { row: usize, pivot: f64 },
    #[error("right-hand side has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Pivots at or below this fraction of the largest diagonal entry of A are
/// rejected.
pub const PIVOT_TOLERANCE: f64 = 1e-13;

/// Lower-triangular factor L with A = L·Lᵀ, in row-envelope storage.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeFactor {
    first_col: Vec<usize>,
    /// Offset of each row's segment in `packed`; length n + 1.
    offset: Vec<usize>,
    packed: Vec<f64>,
}

impl EnvelopeFactor {
    pub fn n(&self) -> usize {
        self.first_col.len()
    }

    pub fn first_col(&self) -> &[usize] {
        &self.first_col
    }

    /// Entries of row `i` from `first_col[i]` through the diagonal.
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.packed[self.offset[i]..self.offset[i + 1]]
    }

    /// L(i, j); zero outside the envelope and above the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if j > i || j < self.first_col[i] {
            0.0
        } else {
            self.row(i)[j - self.first_col[i]]
        }
    }

    /// Total number of stored factor entries.
    pub fn stored_entries(&self) -> usize {
        self.packed.len()
    }

    /// Solves A x = b by forward substitution with L and back substitution
    /// with Lᵀ.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, SolverError> {
        let n = self.n();
        if b.len() != n {
            return Err(SolverError::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        let mut x = b.to_vec();
        for i in 0..n {
            let f = self.first_col[i];
            let row = self.row(i);
            let (off, diag) = row.split_at(row.len() - 1);
            let dot: f64 = off.iter().zip(&x[f..i]).map(|(l, y)| l * y).sum();
            x[i] = (x[i] - dot) / diag[0];
        }
        for i in (0..n).rev() {
            let f = self.first_col[i];
            let row = self.row(i);
            let (off, diag) = row.split_at(row.len() - 1);
            x[i] /= diag[0];
            let xi = x[i];
            for (y, l) in x[f..i].iter_mut().zip(off) {
                *y -= l * xi;
            }
        }
        Ok(x)
    }
}

/// Factors an SPD matrix without pivoting, reading its lower triangle.
pub fn envelope_cholesky(m: &SparseSymMatrix) -> Result<EnvelopeFactor, SolverError> {
    if !m.has_values() {
        return Err(SolverError::MissingValues);
    }
    let n = m.n();
    let first_col: Vec<usize> = (0..n)
        .map(|i| m.row(i).first().map_or(i, |&c| c.min(i)))
        .collect();
    let mut offset = Vec::with_capacity(n + 1);
    offset.push(0);
    for i in 0..n {
        offset.push(offset[i] + i - first_col[i] + 1);
    }
    let mut packed = vec![0.0; offset[n]];
    let mut max_diag = 0.0f64;
    for i in 0..n {
        let vals = m.row_values(i).expect("checked above");
        for (&j, &v) in m.row(i).iter().zip(vals) {
            if j <= i {
                packed[offset[i] + j - first_col[i]] = v;
            }
            if j == i {
                max_diag = max_diag.max(v);
            }
        }
    }
    let tolerance = PIVOT_TOLERANCE * max_diag;

    for i in 0..n {
        let fi = first_col[i];
        let (done, rest) = packed.split_at_mut(offset[i]);
        let row_i = &mut rest[..i - fi + 1];
        for j in fi..i {
            let fj = first_col[j];
            let row_j = &done[offset[j]..offset[j + 1]];
            let k0 = fi.max(fj);
            let dot: f64 = row_i[k0 - fi..j - fi]
                .iter()
                .zip(&row_j[k0 - fj..j - fj])
                .map(|(a, b)| a * b)
                .sum();
            row_i[j - fi] = (row_i[j - fi] - dot) / row_j[j - fj];
        }
        let (off, diag) = row_i.split_at_mut(i - fi);
        let pivot = diag[0] - off.iter().map(|l| l * l).sum::<f64>();
        // Written this way so a NaN pivot is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(pivot > tolerance) {
            return Err(SolverError::NotPositiveDefinite { row: i, pivot });
        }
        diag[0] = pivot.sqrt();
    }

    Ok(EnvelopeFactor {
        first_col,
        offset,
        packed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn dense(n: usize, a: &[f64]) -> SparseSymMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if a[i * n + j] != 0.0 {
                    t.push((i, j, a[i * n + j]));
                }
            }
        }
        SparseSymMatrix::from_triplets(n, &t, true).unwrap()
    }

    #[test]
    fn two_by_two() {
        let f = envelope_cholesky(&dense(2, &[4.0, 2.0, 2.0, 3.0])).unwrap();
        assert_eq!(f.entry(0, 0), 2.0);
        assert_eq!(f.entry(1, 0), 1.0);
        assert_abs_diff_eq!(f.entry(1, 1), 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(f.entry(0, 1), 0.0);
        let x = f.solve(&[8.0, 7.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.25, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 1.5, epsilon = 1e-12);
    }

    #[test]
    fn identity_factor() {
        let f = envelope_cholesky(&SparseSymMatrix::identity(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(f.entry(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(f.stored_entries(), 3);
        assert_eq!(f.solve(&[3.0, -1.0, 0.5]).unwrap(), vec![3.0, -1.0, 0.5]);
    }

    #[test]
    fn indefinite_rejected_at_row_one() {
        let err = envelope_cholesky(&dense(2, &[1.0, 2.0, 2.0, 1.0])).unwrap_err();
        assert!(matches!(err, SolverError::NotPositiveDefinite { row: 1, pivot } if pivot == -3.0));
    }

    #[test]
    fn missing_diagonal_rejected() {
        let m = SparseSymMatrix::from_triplets(2, &[(0, 0, 1.0), (0, 1, 0.5), (1, 0, 0.5)], true)
            .unwrap();
        assert!(matches!(
            envelope_cholesky(&m),
            Err(SolverError::NotPositiveDefinite { row: 1, .. })
        ));
    }

    #[test]
    fn pattern_rejected() {
        let m = SparseSymMatrix::from_triplets(1, &[(0, 0, 1.0)], false).unwrap();
        assert_eq!(envelope_cholesky(&m), Err(SolverError::MissingValues));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = envelope_cholesky(&SparseSymMatrix::identity(2)).unwrap();
        assert_eq!(
            f.solve(&[1.0]),
            Err(SolverError::DimensionMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn fill_stays_in_envelope() {
        // Arrow pointing down-right: row 3 is full, fill happens inside it.
        #[rustfmt::skip]
        let a = [
            4.0, 0.0, 0.0, 1.0,
            0.0, 4.0, 1.0, 1.0,
            0.0, 1.0, 4.0, 1.0,
            1.0, 1.0, 1.0, 4.0,
        ];
        let m = dense(4, &a);
        let f = envelope_cholesky(&m).unwrap();
        assert_eq!(f.first_col(), &[0, 1, 1, 0]);
        assert_eq!(f.stored_entries(), crate::metrics::profile(&m) + 4);
        for i in 0..4 {
            for j in 0..=i {
                let llt: f64 = (0..4).map(|k| f.entry(i, k) * f.entry(j, k)).sum();
                assert_abs_diff_eq!(llt, a[i * 4 + j], epsilon = 1e-12);
            }
        }
    }
}
