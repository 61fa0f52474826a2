//! Central tolerance registry.
//!
//! Every numerical comparison in the crate routes through one of these
//! constants so that accuracy policy lives in a single place. Values are
//! grouped by the kind of quantity being compared, not by call site.

/// Maximum allowed |tr ρ − 1| for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-10;

/// Maximum allowed entrywise |ρ − ρ†| for a valid density matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Most negative eigenvalue tolerated in a density matrix (solver noise floor).
pub const PSD_EIG_FLOOR: f64 = -1e-9;

/// Comparison tolerance for exact closed-form formulas (matrix entries,
/// thresholds, analytic spectra).
pub const EXACT_CMP_TOL: f64 = 1e-10;

/// Tolerance on eigen-solver outputs: residual ‖A·v − λ·v‖, orthonormality,
/// and eigenvalue sums.
pub const EIGEN_TOL: f64 = 1e-9;

/// Hermiticity requirement on eigensystem inputs.
pub const EIGEN_INPUT_HERMITICITY_TOL: f64 = 1e-8;

/// Accepted steady-state residual ‖L·vec(ρ)‖₂.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// Entrywise agreement required between the two generator formulations
/// (effective-Hamiltonian form vs. coherent-plus-dissipators form).
pub const FORMULATION_EQUIV_TOL: f64 = 1e-12;

/// Trace-conservation bound on the generator: ‖trace ∘ L‖ per application.
pub const TRACE_CONSERVATION_TOL: f64 = 1e-10;

/// Relative singular-value cutoff for null-space dimension counting:
/// σᵢ < NULLSPACE_REL_TOL · σ_max counts as zero.
pub const NULLSPACE_REL_TOL: f64 = 1e-10;

/// Frobenius agreement required between the two trace-replaced sparse
/// solves (different replaced rows); disagreement signals a degenerate
/// null space.
pub const SPARSE_AGREEMENT_TOL: f64 = 1e-8;

/// Eigenvalues in [−ENTROPY_EIG_FLOOR, 0) are treated as 0 in entropy sums.
pub const ENTROPY_EIG_FLOOR: f64 = 1e-12;

/// Dead band around zero for entanglement detection: concurrence values and
/// partial-transpose eigenvalues within ±DEAD_BAND count as separable.
pub const DEAD_BAND: f64 = 1e-10;

/// Frobenius change of the propagated state between convergence checks below
/// which long-time propagation declares a steady state.
pub const PROPAGATION_CONVERGENCE_TOL: f64 = 1e-12;

/// Trace drift during propagation beyond which the step size is deemed
/// unstable.
pub const PROPAGATION_TRACE_DRIFT_TOL: f64 = 1e-6;

/// Default absolute tolerance (in units of the scanned rate) for bisection
/// threshold searches.
pub const BISECTION_DEFAULT_TOL: f64 = 1e-8;

/// Advisory ratio of any physical rate to the qubit frequency above which a
/// regime warning is emitted (boundary inclusive: exactly this ratio is fine).
pub const REGIME_RATIO_LIMIT: f64 = 0.1;

/// Internal convergence target for Jacobi iterations, relative to the input
/// norm.
pub const JACOBI_REL_TOL: f64 = 1e-14;
