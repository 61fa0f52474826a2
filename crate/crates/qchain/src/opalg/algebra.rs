//! Multi-qubit operator algebra: Pauli matrices, local embedding, partial
//! trace, and partial transpose.

use num_complex::Complex64;

use crate::opalg::matrix::c;
use crate::opalg::{ComplexMatrix, DensityMatrix, OpalgError};

/// σ_x.
pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .expect("static 2x2")
}

/// σ_y.
pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ])
    .expect("static 2x2")
}

/// σ_z = diag(1, −1); |0⟩ is the σ_z = +1 (local ground) state.
pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ])
    .expect("static 2x2")
}

/// Lowering operator σ_− = |0⟩⟨1|: maps the excited level to the ground
/// level, so σ_+σ_− projects onto the decaying (excited) level |1⟩⟨1|.
pub fn sigma_minus() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0)],
    ])
    .expect("static 2x2")
}

/// Raising operator σ_+ = |1⟩⟨0|.
pub fn sigma_plus() -> ComplexMatrix {
    sigma_minus().dagger()
}

/// Kronecker product — the public name for [`ComplexMatrix::kron`].
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Embed a single-qubit operator at `site` (1-based) of an `n_qubits`
/// register: I^⊗(site−1) ⊗ op ⊗ I^⊗(N−site).
pub fn embed_local(
    op: &ComplexMatrix,
    site: usize,
    n_qubits: usize,
) -> Result<ComplexMatrix, OpalgError> {
    if op.dim() != 2 {
        return Err(OpalgError::DimensionMismatch {
            expected: 2,
            got: op.dim(),
        });
    }
    if site == 0 || site > n_qubits {
        return Err(OpalgError::SiteOutOfRange { site, n_qubits });
    }
    let dim = 1usize << n_qubits;
    // Direct index construction: bit of `site` occupies position
    // n_qubits − site (site 1 is the most significant bit).
    let shift = n_qubits - site;
    let mask = 1usize << shift;
    let mut out = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        let rbit = (row >> shift) & 1;
        for cbit in 0..2usize {
            let v = op[(rbit, cbit)];
            if v != Complex64::ZERO {
                let col = (row & !mask) | (cbit << shift);
                out[(row, col)] = v;
            }
        }
    }
    Ok(out)
}

/// Partial trace keeping the listed sites (1-based, strictly ascending).
/// The reduced state's factors keep their chain order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, OpalgError> {
    let n = rho.n_qubits();
    if keep.is_empty() {
        return Err(OpalgError::EmptyKeepSet);
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&s| s == 0 || s > n) {
        return Err(OpalgError::SiteOutOfRange {
            site: *keep.iter().find(|&&s| s == 0 || s > n).unwrap_or(&0),
            n_qubits: n,
        });
    }
    let k = keep.len();
    let m = n - k;
    let traced: Vec<usize> = (1..=n).filter(|s| !keep.contains(s)).collect();

    // Bit position (from the least significant end) of each site index.
    let pos = |site: usize| n - site;
    let keep_pos: Vec<usize> = keep.iter().map(|&s| pos(s)).collect();
    let traced_pos: Vec<usize> = traced.iter().map(|&s| pos(s)).collect();

    // Scatter `bits` of a compact index onto the given bit positions,
    // preserving significance order (first listed site is most significant).
    let scatter = |compact: usize, positions: &[usize]| -> usize {
        let mut out = 0usize;
        for (i, &p) in positions.iter().enumerate() {
            let bit = (compact >> (positions.len() - 1 - i)) & 1;
            out |= bit << p;
        }
        out
    };

    let dk = 1usize << k;
    let dm = 1usize << m;
    let full = rho.matrix();
    let mut out = ComplexMatrix::zeros(dk);
    for ik in 0..dk {
        let ik_scat = scatter(ik, &keep_pos);
        for jk in 0..dk {
            let jk_scat = scatter(jk, &keep_pos);
            let mut acc = Complex64::ZERO;
            for t in 0..dm {
                let t_scat = scatter(t, &traced_pos);
                acc += full[(ik_scat | t_scat, jk_scat | t_scat)];
            }
            out[(ik, jk)] = acc;
        }
    }
    DensityMatrix::new(out, k)
}

/// Transpose the tensor factor of one site (1-based), leaving the rest
/// untouched. An involution that preserves trace and Hermiticity but not
/// positivity — negative output eigenvalues witness entanglement.
pub fn partial_transpose(rho: &DensityMatrix, site: usize) -> Result<ComplexMatrix, OpalgError> {
    let n = rho.n_qubits();
    if site == 0 || site > n {
        return Err(OpalgError::SiteOutOfRange { site, n_qubits: n });
    }
    let dim = rho.dim();
    let mask = 1usize << (n - site);
    let full = rho.matrix();
    let mut out = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        for col in 0..dim {
            // Swap the site's bit between row and column indices.
            let r2 = (row & !mask) | (col & mask);
            let c2 = (col & !mask) | (row & mask);
            out[(row, col)] = full[(r2, c2)];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::eigen::hermitian_eigensystem;
    use approx::assert_abs_diff_eq;

    fn bell_phi_plus() -> DensityMatrix {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_state_vector(
            &[c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)],
            2,
        )
        .unwrap()
    }

    #[test]
    fn sigma_z_kron_sigma_z_is_diagonal() {
        let zz = tensor_product(&sigma_z(), &sigma_z());
        for (i, want) in [1.0, -1.0, -1.0, 1.0].into_iter().enumerate() {
            assert_abs_diff_eq!(zz[(i, i)].re, want);
        }
    }

    #[test]
    fn sigma_x_kron_sigma_z_block_structure() {
        let m = tensor_product(&sigma_x(), &sigma_z());
        let z = sigma_z();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m[(i, 2 + j)], z[(i, j)]);
                assert_eq!(m[(2 + i, j)], z[(i, j)]);
                assert_eq!(m[(i, j)], Complex64::ZERO);
                assert_eq!(m[(2 + i, 2 + j)], Complex64::ZERO);
            }
        }
    }

    #[test]
    fn embed_local_matches_kron() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(
            embed_local(&sigma_z(), 1, 2).unwrap(),
            tensor_product(&sigma_z(), &i2)
        );
        assert_eq!(
            embed_local(&sigma_x(), 2, 2).unwrap(),
            tensor_product(&i2, &sigma_x())
        );
        assert_eq!(embed_local(&sigma_z(), 1, 1).unwrap(), sigma_z());
        assert!(embed_local(&sigma_z(), 3, 2).is_err());
    }

    #[test]
    fn partial_trace_product_state() {
        let rho = DensityMatrix::basis_state(2, 0); // |00⟩⟨00|
        let reduced = partial_trace(&rho, &[1]).unwrap();
        assert_abs_diff_eq!(reduced.matrix()[(0, 0)].re, 1.0);
        assert_abs_diff_eq!(reduced.matrix()[(1, 1)].re, 0.0);
    }

    #[test]
    fn partial_trace_bell_is_maximally_mixed() {
        let reduced = partial_trace(&bell_phi_plus(), &[1]).unwrap();
        assert!(reduced
            .matrix()
            .max_abs_diff(DensityMatrix::maximally_mixed(1).matrix())
            < 1e-14);
    }

    #[test]
    fn partial_trace_composition() {
        // Tracing site 3 then site 2 equals keeping {1} directly.
        let mut seed = 123u64;
        let mut rng = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let raw = ComplexMatrix::from_fn(8, |_, _| c(rng(), rng()));
        let psd = &raw * &raw.dagger();
        let tr = psd.trace().re;
        let rho = DensityMatrix::new(psd.scale(c(1.0 / tr, 0.0)), 3).unwrap();
        let step = partial_trace(&partial_trace(&rho, &[1, 2]).unwrap(), &[1]).unwrap();
        let joint = partial_trace(&rho, &[1]).unwrap();
        assert!(step.matrix().max_abs_diff(joint.matrix()) < 1e-12);
    }

    /// Raw bit-swap transpose, for checks on matrices that are not PSD.
    fn pt_raw(m: &ComplexMatrix, site: usize, n: usize) -> ComplexMatrix {
        let mask = 1usize << (n - site);
        ComplexMatrix::from_fn(m.dim(), |row, col| {
            let r2 = (row & !mask) | (col & mask);
            let c2 = (col & !mask) | (row & mask);
            m[(r2, c2)]
        })
    }

    #[test]
    fn partial_transpose_involution_and_bell_eigenvalue() {
        let rho = bell_phi_plus();
        let pt = partial_transpose(&rho, 2).unwrap();

        // Minimum eigenvalue −1/2 witnesses the entanglement.
        let es = hermitian_eigensystem(&pt).unwrap();
        assert_abs_diff_eq!(es.eigenvalues[0], -0.5, epsilon = 1e-12);

        // Trace and Hermiticity preserved; applying the transpose twice
        // restores the original matrix.
        assert_abs_diff_eq!(pt.trace().re, 1.0, epsilon = 1e-15);
        assert!(pt.hermiticity_defect() < 1e-15);
        assert!(pt_raw(&pt, 2, 2).max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn partial_transpose_of_product_state_is_unchanged_diagonal() {
        let rho = DensityMatrix::basis_state(2, 1);
        let pt = partial_transpose(&rho, 1).unwrap();
        assert!(pt.max_abs_diff(rho.matrix()) < 1e-15);
    }
}
