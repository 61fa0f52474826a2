//! Minimal compressed-sparse-column storage for superoperators.
//!
//! Only what the Liouvillian needs: triplet assembly with duplicate merging,
//! matrix-vector products, and a left application of the trace functional.
//! Factorization is delegated to `faer` in the steady-state solver.

use num_complex::Complex64;

/// Compressed sparse column matrix over complex doubles.
#[derive(Clone, Debug)]
pub struct CscMatrix {
    dim: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl CscMatrix {
    /// Assemble from (row, col, value) triplets; duplicates are summed and
    /// resulting exact zeros dropped.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (c, r));
        let mut col_ptr = vec![0usize; dim + 1];
        let mut row_idx = Vec::with_capacity(triplets.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            debug_assert!(r < dim && c < dim, "triplet index out of range");
            if last == Some((r, c)) {
                *values.last_mut().expect("non-empty when last is set") += v;
            } else {
                row_idx.push(r);
                values.push(v);
                col_ptr[c + 1] += 1;
                last = Some((r, c));
            }
        }
        for c in 0..dim {
            col_ptr[c + 1] += col_ptr[c];
        }
        Self {
            dim,
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// y = A·x.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        let mut y = vec![Complex64::ZERO; self.dim];
        for col in 0..self.dim {
            let xc = x[col];
            if xc == Complex64::ZERO {
                continue;
            }
            for k in self.col_ptr[col]..self.col_ptr[col + 1] {
                y[self.row_idx[k]] += self.values[k] * xc;
            }
        }
        y
    }

    /// wᵀ·A for a row functional w (returns a dense row vector).
    pub fn left_apply(&self, w: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(w.len(), self.dim, "vector length mismatch");
        let mut out = vec![Complex64::ZERO; self.dim];
        for col in 0..self.dim {
            let mut acc = Complex64::ZERO;
            for k in self.col_ptr[col]..self.col_ptr[col + 1] {
                acc += w[self.row_idx[k]] * self.values[k];
            }
            out[col] = acc;
        }
        out
    }

    /// Visit every stored entry as (row, col, value).
    pub fn for_each(&self, mut f: impl FnMut(usize, usize, Complex64)) {
        for col in 0..self.dim {
            for k in self.col_ptr[col]..self.col_ptr[col + 1] {
                f(self.row_idx[k], col, self.values[k]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::c;

    #[test]
    fn assembly_merges_duplicates_and_applies() {
        let trips = vec![
            (0, 0, c(1.0, 0.0)),
            (0, 0, c(2.0, 0.0)),
            (1, 0, c(0.0, 1.0)),
            (2, 2, c(4.0, 0.0)),
        ];
        let m = CscMatrix::from_triplets(3, trips);
        assert_eq!(m.nnz(), 3);
        let y = m.apply(&[c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(y[0], c(3.0, 0.0));
        assert_eq!(y[1], c(0.0, 1.0));
        assert_eq!(y[2], c(8.0, 0.0));
    }

    #[test]
    fn left_apply_matches_transpose_action() {
        let trips = vec![(0, 1, c(2.0, 0.0)), (2, 1, c(0.0, -1.0)), (1, 0, c(3.0, 0.0))];
        let m = CscMatrix::from_triplets(3, trips);
        let w = [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let row = m.left_apply(&w);
        assert_eq!(row[0], c(3.0, 0.0));
        assert_eq!(row[1], c(2.0, -1.0));
        assert_eq!(row[2], c(0.0, 0.0));
    }
}
