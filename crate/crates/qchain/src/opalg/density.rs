//! Validated density matrices with qubit-count metadata.

use num_complex::Complex64;

use crate::opalg::eigen::hermitian_eigensystem;
use crate::opalg::{ComplexMatrix, OpalgError};
use crate::tol;

/// A trace-one, Hermitian, positive-semidefinite matrix on `n_qubits`
/// qubits (dimension 2^N).
///
/// Basis convention, fixed crate-wide: site 1 is the leftmost (most
/// significant) tensor factor, so basis index `b = b₁b₂…b_N` as a binary
/// number; `b_j = 0` is the σ_z = +1 state of site j, which is the local
/// ground state of the free Hamiltonian −½ω₀σ_z and the state the decay
/// channel empties into.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    n_qubits: usize,
}

impl DensityMatrix {
    /// Validate and wrap a matrix: trace 1 within [`tol::TRACE_TOL`],
    /// Hermitian within [`tol::HERMITICITY_TOL`], minimum eigenvalue no
    /// lower than [`tol::PSD_EIG_FLOOR`].
    pub fn new(matrix: ComplexMatrix, n_qubits: usize) -> Result<Self, OpalgError> {
        if n_qubits == 0 || matrix.dim() != 1usize << n_qubits {
            return Err(OpalgError::DimensionMismatch {
                expected: 1usize << n_qubits.max(1),
                got: matrix.dim(),
            });
        }
        matrix.validate_finite()?;
        let tr = matrix.trace();
        let trace_defect = (tr - Complex64::ONE).norm();
        if trace_defect > tol::TRACE_TOL {
            return Err(OpalgError::TraceNotOne { defect: trace_defect });
        }
        let herm_defect = matrix.hermiticity_defect();
        if herm_defect > tol::HERMITICITY_TOL {
            return Err(OpalgError::NotHermitian {
                defect: herm_defect,
            });
        }
        let eigen = hermitian_eigensystem(&matrix)?;
        let min_eig = eigen.eigenvalues.first().copied().unwrap_or(0.0);
        if min_eig < tol::PSD_EIG_FLOOR {
            return Err(OpalgError::NotPositive { min_eig });
        }
        Ok(Self { matrix, n_qubits })
    }

    /// The maximally mixed state I/2^N.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let m = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self {
            matrix: m,
            n_qubits,
        }
    }

    /// The computational pure state |b⟩⟨b| for basis index `b`.
    pub fn basis_state(n_qubits: usize, b: usize) -> Self {
        let dim = 1usize << n_qubits;
        assert!(b < dim, "basis index out of range");
        let mut m = ComplexMatrix::zeros(dim);
        m[(b, b)] = Complex64::ONE;
        Self {
            matrix: m,
            n_qubits,
        }
    }

    /// Pure state from an (unnormalized) state vector.
    pub fn from_state_vector(amps: &[Complex64], n_qubits: usize) -> Result<Self, OpalgError> {
        let dim = 1usize << n_qubits;
        if amps.len() != dim {
            return Err(OpalgError::DimensionMismatch {
                expected: dim,
                got: amps.len(),
            });
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(OpalgError::NonFiniteEntry);
        }
        let m = ComplexMatrix::from_fn(dim, |i, j| amps[i] * amps[j].conj() / norm_sq);
        Ok(Self {
            matrix: m,
            n_qubits,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}
