//! Hermitian eigensystems via cyclic complex Jacobi rotations.

use num_complex::Complex64;

use crate::opalg::{ComplexMatrix, OpalgError};
use crate::tol;

/// Eigen-decomposition of a Hermitian matrix: `m = V · diag(λ) · V†`.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    /// Real eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, ordered like `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

/// Diagonalize a Hermitian matrix.
///
/// The input must be Hermitian within [`tol::EIGEN_INPUT_HERMITICITY_TOL`];
/// anything worse is rejected rather than silently symmetrized. Classic
/// cyclic Jacobi: repeatedly zero the largest-growing off-diagonal entries
/// with 2×2 unitary rotations until the off-diagonal mass is negligible.
/// For the ≤ 256-dimensional operators handled here this is both simple and
/// accurate (eigenvalues converge to high relative precision).
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<EigenSystem, OpalgError> {
    let defect = m.hermiticity_defect();
    if defect > tol::EIGEN_INPUT_HERMITICITY_TOL {
        return Err(OpalgError::NotHermitian { defect });
    }
    let n = m.dim();
    // Work on the exactly-Hermitian part so rotations stay unitary.
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let stop = tol::JACOBI_REL_TOL * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= stop / (n as f64) {
                    continue;
                }
                let (cs, sn) = rotation_for(a[(p, p)].re, a[(q, q)].re, apq);
                apply_rotation(&mut a, &mut v, p, q, cs, sn);
            }
        }
    }

    // Extract, sort ascending, and reorder eigenvector columns to match.
    let mut order: Vec<usize> = (0..n).collect();
    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// 2×2 rotation parameters (cosine, complex sine) diagonalizing the
/// Hermitian block [[app, apq], [conj(apq), aqq]].
fn rotation_for(app: f64, aqq: f64, apq: Complex64) -> (f64, Complex64) {
    let abs = apq.norm();
    let phase = apq / abs; // e^{iφ}
    let tau = (aqq - app) / (2.0 * abs);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = phase * (t * cs);
    (cs, sn)
}

/// Apply the unitary R = [[c, s], [−s̄, c]] on columns/rows (p, q):
/// a ← R† a R (restricted to the p, q plane), v ← v R.
fn apply_rotation(
    a: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
    cs: f64,
    sn: Complex64,
) {
    let n = a.dim();
    // Columns of a: (a·R)ᵢₚ = c·aᵢₚ − s̄·aᵢ_q, (a·R)ᵢ_q = s·aᵢₚ + c·aᵢ_q.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = cs * aip - sn.conj() * aiq;
        a[(i, q)] = sn * aip + cs * aiq;
    }
    // Rows of a: R† acting from the left is the conjugate of the column map.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = cs * apj - sn * aqj;
        a[(q, j)] = sn.conj() * apj + cs * aqj;
    }
    // Numerical hygiene: the rotated pivot is zero by construction.
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = cs * vip - sn.conj() * viq;
        v[(i, q)] = sn * vip + cs * viq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::matrix::c;
    use approx::assert_abs_diff_eq;

    fn reconstruct(es: &EigenSystem) -> ComplexMatrix {
        let n = es.eigenvalues.len();
        let v = &es.eigenvectors;
        let mut lam = ComplexMatrix::zeros(n);
        for i in 0..n {
            lam[(i, i)] = c(es.eigenvalues[i], 0.0);
        }
        &(v * &lam) * &v.dagger()
    }

    #[test]
    fn pauli_x_spectrum() {
        let sx = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let es = hermitian_eigensystem(&sx).unwrap();
        assert_abs_diff_eq!(es.eigenvalues[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(es.eigenvalues[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn quarter_identity_spectrum() {
        let m = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        let es = hermitian_eigensystem(&m).unwrap();
        for lam in es.eigenvalues {
            assert_abs_diff_eq!(lam, 0.25, epsilon = 1e-14);
        }
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        // Deterministic pseudo-random Hermitian matrix.
        let n = 12;
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let z = c(rng(), if i == j { 0.0 } else { rng() });
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        let es = hermitian_eigensystem(&m).unwrap();
        assert!(reconstruct(&es).max_abs_diff(&m) < 1e-12);
        let vtv = &es.eigenvectors.dagger() * &es.eigenvectors;
        assert!(vtv.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-12);
        // Ascending order.
        for w in es.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(OpalgError::NotHermitian { .. })
        ));
    }
}
