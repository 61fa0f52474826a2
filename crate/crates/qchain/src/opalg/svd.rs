//! Singular value decomposition via one-sided (Hestenes) Jacobi.
//!
//! One-sided Jacobi orthogonalizes the columns of the working matrix with
//! exact 2×2 unitaries, which preserves small singular values to high
//! *relative* accuracy — exactly what reliable null-space dimension counting
//! needs. Normal-equation approaches (eigenvalues of A†A) would square the
//! condition number and wash out the σ ≈ 0 structure this crate relies on.

use num_complex::Complex64;

use crate::opalg::ComplexMatrix;
use crate::tol;

/// Thin SVD of a square complex matrix: `a = U · diag(σ) · V†`.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Singular values in descending order.
    pub singular_values: Vec<f64>,
    /// Left singular vectors as columns. Columns paired with σ = 0 are zero
    /// (they are not needed by any consumer in this crate).
    pub u: ComplexMatrix,
    /// Right singular vectors as columns (unitary).
    pub v: ComplexMatrix,
}

impl Svd {
    /// Number of singular values below `rel_tol · σ_max` (the null-space
    /// dimension estimate).
    pub fn null_dim(&self, rel_tol: f64) -> usize {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        if smax == 0.0 {
            return self.singular_values.len();
        }
        self.singular_values
            .iter()
            .filter(|&&s| s < rel_tol * smax)
            .count()
    }

    /// Right singular vector with the smallest singular value.
    pub fn smallest_right_vector(&self) -> Vec<Complex64> {
        let n = self.v.dim();
        (0..n).map(|i| self.v[(i, n - 1)]).collect()
    }
}

/// Compute the SVD of a square matrix by one-sided Jacobi sweeps.
pub fn svd(a: &ComplexMatrix) -> Svd {
    let n = a.dim();
    // Columns of w converge to U·diag(σ); v accumulates the right rotations.
    let mut w: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)]).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == j {
                        Complex64::ONE
                    } else {
                        Complex64::ZERO
                    }
                })
                .collect()
        })
        .collect();

    let mut norms_sq: Vec<f64> = w.iter().map(|col| col_norm_sq(col)).collect();

    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (np, nq) = (norms_sq[p], norms_sq[q]);
                if np == 0.0 || nq == 0.0 {
                    continue;
                }
                let g = dot(&w[p], &w[q]); // w_p† · w_q
                let gn = g.norm();
                if gn <= tol::JACOBI_REL_TOL * (np * nq).sqrt() {
                    continue;
                }
                rotated = true;
                // Diagonalize the 2×2 Gram block [[np, g], [ḡ, nq]].
                let phase = g / gn;
                let tau = (nq - np) / (2.0 * gn);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = phase * (t * cs);
                rotate_pair(&mut w, p, q, cs, sn);
                rotate_pair(&mut v, p, q, cs, sn);
                norms_sq[p] = col_norm_sq(&w[p]);
                norms_sq[q] = col_norm_sq(&w[q]);
            }
        }
        if !rotated {
            break;
        }
    }

    // Sort by singular value descending; normalize the nonzero columns of w.
    let mut order: Vec<usize> = (0..n).collect();
    let sigmas: Vec<f64> = norms_sq.iter().map(|&s| s.sqrt()).collect();
    order.sort_by(|&i, &j| sigmas[j].total_cmp(&sigmas[i]));

    let singular_values: Vec<f64> = order.iter().map(|&i| sigmas[i]).collect();
    let smax = singular_values.first().copied().unwrap_or(0.0);
    let mut u = ComplexMatrix::zeros(n);
    let mut vv = ComplexMatrix::zeros(n);
    for (new_j, &old_j) in order.iter().enumerate() {
        let sigma = sigmas[old_j];
        for i in 0..n {
            vv[(i, new_j)] = v[old_j][i];
            if sigma > f64::MIN_POSITIVE.sqrt() * smax.max(1.0) {
                u[(i, new_j)] = w[old_j][i] / sigma;
            }
        }
    }
    Svd {
        singular_values,
        u,
        v: vv,
    }
}

fn col_norm_sq(col: &[Complex64]) -> f64 {
    col.iter().map(|z| z.norm_sqr()).sum()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Right-multiply columns (p, q) by [[cs, sn], [−s̄n, cs]].
fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, cs: f64, sn: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    let cp = &mut head[p];
    let cq = &mut tail[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        let xq = *y;
        *x = cs * xp - sn.conj() * xq;
        *y = sn * xp + cs * xq;
    }
}
