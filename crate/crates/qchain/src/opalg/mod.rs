//! Foundational operator algebra: dense complex matrices, density matrices,
//! Pauli/multi-qubit constructions, Hermitian eigensystems, and SVD.

pub mod algebra;
pub mod density;
pub mod eigen;
pub mod matrix;
pub mod svd;

pub use algebra::{
    embed_local, partial_trace, partial_transpose, sigma_minus, sigma_plus, sigma_x, sigma_y,
    sigma_z, tensor_product,
};
pub use density::DensityMatrix;
pub use eigen::{hermitian_eigensystem, EigenSystem};
pub use matrix::{c, ComplexMatrix};
pub use svd::{svd, Svd};

/// Errors from the operator-algebra layer.
#[derive(Debug, thiserror::Error)]
pub enum OpalgError {
    #[error("matrix is not square or rows are ragged")]
    NotSquare,
    #[error("matrix contains a NaN or infinite entry")]
    NonFiniteEntry,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("trace differs from 1 by {defect:e}")]
    TraceNotOne { defect: f64 },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },
    #[error("site {site} out of range for {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },
    #[error("partial trace requires a non-empty keep set")]
    EmptyKeepSet,
}
