//! Steady states and entanglement measures for driven, dissipative qubit
//! chains.
//!
//! The crate models arrays of up to eight qubits, each driven on resonance
//! (or near it), coupled to its nearest neighbours by Ising (σ_zσ_z) or
//! exchange (XX+YY) interactions, and subject to local decay, thermal
//! pumping, and pure dephasing. It provides:
//!
//! - [`generator`]: Hamiltonians, jump operators, and the vectorized
//!   Lindblad generator (dense through four qubits, sparse beyond);
//! - [`steady`]: steady-state solvers — dense null-space extraction, sparse
//!   LU with a trace constraint, long-time propagation, and the closed-form
//!   two-qubit solutions that anchor every numeric path;
//! - [`measures`]: entropy, mutual information, concurrence, entanglement
//!   of formation, positivity tests, and localization probabilities;
//! - [`thresholds`]: closed-form and bisection estimates of the drive
//!   strength at which steady-state entanglement vanishes;
//! - [`opalg`]: the small dense complex linear-algebra layer (Jacobi
//!   eigensolver and SVD) everything above rests on;
//! - [`tol`]: the single registry of numerical tolerances.
//!
//! Conventions, fixed crate-wide: |0⟩ is the local ground state into which
//! decay relaxes (σ_z|0⟩ = +|0⟩); site 1 occupies the most significant bit
//! of the basis index; density matrices are column-stacked by
//! [`opalg::ComplexMatrix::vectorize`].

pub mod generator;
pub mod measures;
pub mod opalg;
pub mod sparse;
pub mod steady;
pub mod thresholds;
pub mod tol;

pub use generator::{
    build_coherent_hamiltonian, build_effective_hamiltonian, build_jump_operators,
    build_liouvillian, build_liouvillian_from_dissipators, nbar_from_temperature, validate_regime,
    ArrayConfig, CouplingSpec, GeneratorError, Liouvillian, LiouvillianStorage, RegimeWarning,
};
pub use measures::{
    binary_entropy, concurrence, entanglement_of_formation, eof_from_concurrence,
    localization_probabilities, mutual_information, ppt_test, steady_entanglement_curve,
    von_neumann_entropy, Bipartition, LocalizationReport, MeasureError,
};
pub use opalg::{DensityMatrix, OpalgError};
pub use steady::{
    analytic_steady_xxyy, analytic_steady_zz, check_uniqueness, propagate_to_steady,
    solve_steady_numeric, steady_spectrum_analytic, ReducedParams, SolveError, SolveMethod,
    SteadyStateReport,
};
pub use thresholds::{
    approx_combined_window, scan_threshold_bisection, threshold_surface, threshold_xxyy,
    threshold_zz, GammaPolicy, SurfaceRow, ThresholdError, ThresholdMethod, ThresholdResult,
};
