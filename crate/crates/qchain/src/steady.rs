//! Steady-state solvers and closed-form two-qubit steady states.
//!
//! Three independent routes to ρ_ss with L·vec(ρ_ss) = 0:
//!
//! 1. [`solve_steady_numeric`] — dense SVD null-space extraction for
//!    superoperator dimension ≤ 256, sparse LU with one row replaced by the
//!    trace constraint beyond that;
//! 2. [`analytic_steady_zz`] / [`analytic_steady_xxyy`] — the closed-form
//!    two-qubit steady state of the resonantly driven, decaying pair;
//! 3. [`propagate_to_steady`] — fixed-step fourth-order integration of the
//!    master equation, used as a dynamics oracle against the other two.
//!
//! The closed form, in reduced parameters r = Γ/Ω, s = J/Ω, t = r² + 1,
//! k = 3 + 2r² + t² + 4r²s² (basis |00⟩, |01⟩, |10⟩, |11⟩ with |0⟩ the
//! ground state):
//!
//! ```text
//!        ⎛ t²+4s²r²   2sr²+irt   2sr²+irt   2irs−r² ⎞
//!  ρ_ss = ⎜ 2sr²−irt      t          r²        ir    ⎟ / k
//!        ⎜ 2sr²−irt      r²         t         ir    ⎟
//!        ⎝ −2irs−r²     −ir        −ir         1    ⎠
//! ```
//!
//! Its spectrum is λ₁ = λ₂ = 1/k and λ± = ((k−2) ± √((k−2)²−4))/(2k): the
//! unnormalized matrix has unit determinant, so the two non-degenerate
//! eigenvalues have product exactly 1/k².

use num_complex::Complex64;

use crate::generator::{GeneratorError, Liouvillian, LiouvillianStorage};
use crate::opalg::matrix::c;
use crate::opalg::{
    hermitian_eigensystem, svd, ComplexMatrix, DensityMatrix, OpalgError,
};
use crate::sparse::CscMatrix;
use crate::tol;

/// Errors from steady-state solvers.
#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("solver produced an invalid density matrix: {0}")]
    State(#[from] OpalgError),
    #[error("steady state is not unique (estimated null-space dimension {null_dim})")]
    NonUniqueSteadyState { null_dim: usize },
    #[error("no steady state found within the residual bound ({residual:.3e} > {bound:.3e})")]
    NoConvergence { residual: f64, bound: f64 },
    #[error("propagation step size unstable: trace drifted by {trace_drift:.3e}")]
    StepSizeUnstable { trace_drift: f64 },
    #[error("sparse LU factorization failed")]
    Factorization,
}

/// Strategy that produced a steady state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    /// Dense SVD null-space extraction.
    NullSpace,
    /// Sparse LU solve with a trace-constraint row.
    LinearSolve,
    /// Closed-form two-qubit expression.
    Analytic,
    /// Long-time integration of the master equation.
    Propagation,
}

impl std::fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolveMethod::NullSpace => "nullspace",
            SolveMethod::LinearSolve => "linear-solve",
            SolveMethod::Analytic => "analytic",
            SolveMethod::Propagation => "propagation",
        })
    }
}

/// A solved steady state together with its quality metrics.
#[derive(Clone, Debug)]
pub struct SteadyStateReport {
    pub state: DensityMatrix,
    /// ‖L·vec(ρ)‖₂ of the returned state under the original generator.
    pub residual: f64,
    /// Estimated dimension of the generator's null space.
    pub null_space_dim: usize,
    pub method: SolveMethod,
}

/// Reduced parameters of the two-qubit closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedParams {
    /// Γ/Ω ≥ 0.
    pub r: f64,
    /// J/Ω (signed).
    pub s: f64,
    /// r² + 1.
    pub t: f64,
    /// Normalization 3 + 2r² + t² + 4r²s² ≥ 4.
    pub k: f64,
}

impl ReducedParams {
    pub fn new(r: f64, s: f64) -> Self {
        assert!(r >= 0.0, "reduced decay rate r = Γ/Ω must be non-negative");
        let t = r * r + 1.0;
        let k = 3.0 + 2.0 * r * r + t * t + 4.0 * r * r * s * s;
        assert!(k > 0.0);
        Self { r, s, t, k }
    }
}

/// Closed-form steady state of two resonantly driven, decaying qubits with
/// Ising coupling J σ_z⊗σ_z, in reduced parameters r = Γ/Ω, s = J/Ω.
pub fn analytic_steady_zz(r: f64, s: f64) -> DensityMatrix {
    let p = ReducedParams::new(r, s);
    let (r, s, t, k) = (p.r, p.s, p.t, p.k);
    let rows = [
        [
            c(t * t + 4.0 * s * s * r * r, 0.0),
            c(2.0 * s * r * r, r * t),
            c(2.0 * s * r * r, r * t),
            c(-r * r, 2.0 * r * s),
        ],
        [c(2.0 * s * r * r, -r * t), c(t, 0.0), c(r * r, 0.0), c(0.0, r)],
        [c(2.0 * s * r * r, -r * t), c(r * r, 0.0), c(t, 0.0), c(0.0, r)],
        [c(-r * r, -2.0 * r * s), c(0.0, -r), c(0.0, -r), c(1.0, 0.0)],
    ];
    let mut m = ComplexMatrix::zeros(4);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m[(i, j)] = v / k;
        }
    }
    DensityMatrix::new(m, 2).expect("closed-form steady state is a valid density matrix")
}

/// Closed-form steady state of the exchange-coupled pair
/// −J_⊥(σ_xσ_x + σ_yσ_y) − J_∥ σ_zσ_z: identical to the Ising closed form
/// with s replaced by d = s_⊥ − s_∥. Only the difference of the couplings
/// enters, so any common shift of (s_⊥, s_∥) leaves the state unchanged.
pub fn analytic_steady_xxyy(r: f64, s_perp: f64, s_par: f64) -> DensityMatrix {
    analytic_steady_zz(r, s_perp - s_par)
}

/// Spectrum of [`analytic_steady_zz`] in ascending order:
/// [λ₋, 1/k, 1/k, λ₊] with λ± = ((k−2) ± √((k−2)²−4))/(2k).
/// The eigenvalues sum to 1 identically and λ₋λ₊ = 1/k².
pub fn steady_spectrum_analytic(r: f64, s: f64) -> [f64; 4] {
    let p = ReducedParams::new(r, s);
    let k = p.k;
    let a = k - 2.0;
    let disc = (a * a - 4.0).max(0.0);
    let root = disc.sqrt();
    let lo = (a - root) / (2.0 * k);
    let hi = (a + root) / (2.0 * k);
    [lo, 1.0 / k, 1.0 / k, hi]
}

/// Solve L·vec(ρ) = 0 for the trace-one steady state. Dense generators are
/// handled by SVD null-space extraction; sparse generators by LU after
/// replacing one redundant row with the trace constraint, solved twice with
/// different replaced rows as a uniqueness heuristic.
pub fn solve_steady_numeric(lv: &Liouvillian) -> Result<SteadyStateReport, SolveError> {
    match lv.storage() {
        LiouvillianStorage::Dense(m) => solve_dense(lv, m),
        LiouvillianStorage::Sparse(m) => solve_sparse(lv, m),
    }
}

fn solve_dense(lv: &Liouvillian, m: &ComplexMatrix) -> Result<SteadyStateReport, SolveError> {
    let decomposition = svd(m);
    let null_dim = decomposition.null_dim(tol::NULLSPACE_REL_TOL);
    if null_dim == 0 {
        let sigma_min = decomposition
            .singular_values
            .last()
            .copied()
            .unwrap_or(f64::INFINITY);
        return Err(SolveError::NoConvergence {
            residual: sigma_min,
            bound: tol::RESIDUAL_TOL,
        });
    }
    if null_dim > 1 {
        return Err(SolveError::NonUniqueSteadyState { null_dim });
    }
    let raw = ComplexMatrix::unvectorize(&decomposition.smallest_right_vector());
    finish(lv, raw, 1, SolveMethod::NullSpace)
}

fn solve_sparse(lv: &Liouvillian, m: &CscMatrix) -> Result<SteadyStateReport, SolveError> {
    if lv.config().is_noiseless() {
        // Without dissipation the null space contains every spectral
        // projector of H — at least two independent directions.
        return Err(SolveError::NonUniqueSteadyState { null_dim: 2 });
    }
    let d = lv.hilbert_dim();
    // Each diagonal row index i·d+i participates in the trace dependency
    // Σ_i L[i·d+i, :] = 0, so replacing one of them keeps the rest of the
    // system intact. Two different replacements must agree when the steady
    // state is unique.
    let first = trace_replaced_solve(m, d, 0)?;
    let second = trace_replaced_solve(m, d, d + 1)?;
    let rho_a = normalized_hermitian(&ComplexMatrix::unvectorize(&first));
    let rho_b = normalized_hermitian(&ComplexMatrix::unvectorize(&second));
    match (rho_a, rho_b) {
        (Some(a), Some(b)) => {
            if a.frobenius_diff(&b) > tol::SPARSE_AGREEMENT_TOL {
                return Err(SolveError::NonUniqueSteadyState { null_dim: 2 });
            }
            finish(lv, a, 1, SolveMethod::LinearSolve)
        }
        _ => Err(SolveError::NonUniqueSteadyState { null_dim: 2 }),
    }
}

/// Normalize to unit trace, then Hermitize; `None` when the trace is too
/// small to divide by (a genuinely traceless null vector cannot be a state,
/// which signals a degenerate null space). Dividing by the complex trace
/// must happen BEFORE hermitizing: an extracted null vector carries an
/// arbitrary global phase e^{iφ}, and hermitizing first would collapse it
/// by cos φ — to exactly zero at φ = ±π/2.
fn normalized_hermitian(raw: &ComplexMatrix) -> Option<ComplexMatrix> {
    let tr = raw.trace();
    if tr.norm() < 1e-12 * raw.frobenius_norm().max(f64::MIN_POSITIVE) {
        return None;
    }
    Some(raw.scale(c(1.0, 0.0) / tr).hermitize())
}

/// Post-solve hygiene: Hermitize, normalize, clip eigenvalues in
/// [−1e-9, 0) to zero, renormalize, then check the residual under the
/// original generator.
fn finish(
    lv: &Liouvillian,
    raw: ComplexMatrix,
    null_space_dim: usize,
    method: SolveMethod,
) -> Result<SteadyStateReport, SolveError> {
    let normalized = normalized_hermitian(&raw)
        .ok_or(SolveError::NonUniqueSteadyState { null_dim: 2 })?;
    let state = clip_to_state(&normalized, lv.config().n_qubits)?;
    let residual = lv.residual_of(state.matrix());
    if residual > tol::RESIDUAL_TOL {
        return Err(SolveError::NoConvergence {
            residual,
            bound: tol::RESIDUAL_TOL,
        });
    }
    Ok(SteadyStateReport {
        state,
        residual,
        null_space_dim,
        method,
    })
}

fn clip_to_state(normalized: &ComplexMatrix, n_qubits: usize) -> Result<DensityMatrix, SolveError> {
    let es = hermitian_eigensystem(normalized)?;
    let min_eig = es.eigenvalues.first().copied().unwrap_or(0.0);
    if min_eig < tol::PSD_EIG_FLOOR {
        return Err(SolveError::State(OpalgError::NotPositive { min_eig }));
    }
    if min_eig >= 0.0 {
        // Already positive semidefinite; keep the matrix bit-for-bit.
        return Ok(DensityMatrix::new(normalized.clone(), n_qubits)?);
    }
    let dim = normalized.dim();
    let clipped: Vec<f64> = es.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    let mut rebuilt = ComplexMatrix::zeros(dim);
    for (idx, &l) in clipped.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let w = l / total;
        for i in 0..dim {
            let vi = es.eigenvectors[(i, idx)];
            for j in 0..dim {
                rebuilt[(i, j)] += vi * es.eigenvectors[(j, idx)].conj() * w;
            }
        }
    }
    Ok(DensityMatrix::new(rebuilt.hermitize(), n_qubits)?)
}

fn trace_replaced_solve(
    m: &CscMatrix,
    d: usize,
    replaced: usize,
) -> Result<Vec<Complex64>, SolveError> {
    use faer::prelude::*;
    use faer::sparse::{SparseColMat, Triplet};

    let n = m.dim();
    let mut trips: Vec<Triplet<usize, usize, c64>> = Vec::with_capacity(m.nnz() + d);
    m.for_each(|row, col, v| {
        if row != replaced {
            trips.push(Triplet::new(row, col, c64::new(v.re, v.im)));
        }
    });
    for i in 0..d {
        trips.push(Triplet::new(replaced, i * d + i, c64::new(1.0, 0.0)));
    }
    let a = SparseColMat::<usize, c64>::try_new_from_triplets(n, n, &trips)
        .map_err(|_| SolveError::Factorization)?;
    let lu = a.sp_lu().map_err(|_| SolveError::Factorization)?;
    let mut rhs = Mat::<c64>::zeros(n, 1);
    rhs[(replaced, 0)] = c64::new(1.0, 0.0);
    let x = lu.solve(&rhs);
    Ok((0..n)
        .map(|i| Complex64::new(x[(i, 0)].re, x[(i, 0)].im))
        .collect())
}

/// Integrate d vec(ρ)/dt = L·vec(ρ) with classical fourth-order Runge-Kutta
/// until `t_max`, stopping early once the state stalls (successive
/// checkpoints closer than 1e-12). `dt = None` selects
/// 0.01 / max(total jump rate, ‖H_coh‖_F).
pub fn propagate_to_steady(
    lv: &Liouvillian,
    rho0: &DensityMatrix,
    t_max: f64,
    dt: Option<f64>,
) -> Result<DensityMatrix, SolveError> {
    assert!(t_max >= 0.0, "t_max must be non-negative");
    if let Some(step) = dt {
        assert!(step > 0.0, "dt must be positive");
    }
    let step = dt.unwrap_or_else(|| default_step(lv));
    let steps = if step.is_finite() && step > 0.0 {
        (t_max / step).ceil() as usize
    } else {
        0
    };
    let d = lv.hilbert_dim();
    let mut v = rho0.matrix().vectorize();
    let check_every = 50usize;
    let mut prev_check = v.clone();
    for n in 0..steps {
        rk4_step(lv, &mut v, step);
        if (n + 1) % check_every == 0 || n + 1 == steps {
            let tr: Complex64 = (0..d).map(|i| v[i * d + i]).sum();
            let drift = (tr - Complex64::ONE).norm();
            if drift > tol::PROPAGATION_TRACE_DRIFT_TOL {
                return Err(SolveError::StepSizeUnstable { trace_drift: drift });
            }
            let moved: f64 = v
                .iter()
                .zip(prev_check.iter())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if n + 1 < steps && moved < tol::PROPAGATION_CONVERGENCE_TOL {
                break;
            }
            prev_check.copy_from_slice(&v);
        }
    }
    let normalized = normalized_hermitian(&ComplexMatrix::unvectorize(&v))
        .ok_or(SolveError::NonUniqueSteadyState { null_dim: 2 })?;
    clip_to_state(&normalized, lv.config().n_qubits)
}

fn default_step(lv: &Liouvillian) -> f64 {
    let rate = lv.config().total_jump_rate();
    let h_norm = crate::generator::build_coherent_hamiltonian(lv.config())
        .map(|h| h.frobenius_norm())
        .unwrap_or(0.0);
    let denom = rate.max(h_norm);
    if denom > 0.0 {
        0.01 / denom
    } else {
        f64::INFINITY
    }
}

fn rk4_step(lv: &Liouvillian, v: &mut [Complex64], dt: f64) {
    let k1 = lv.apply(v);
    let y2: Vec<Complex64> = v
        .iter()
        .zip(&k1)
        .map(|(a, k)| a + k * (0.5 * dt))
        .collect();
    let k2 = lv.apply(&y2);
    let y3: Vec<Complex64> = v
        .iter()
        .zip(&k2)
        .map(|(a, k)| a + k * (0.5 * dt))
        .collect();
    let k3 = lv.apply(&y3);
    let y4: Vec<Complex64> = v.iter().zip(&k3).map(|(a, k)| a + k * dt).collect();
    let k4 = lv.apply(&y4);
    for i in 0..v.len() {
        v[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
    }
}

/// Estimate whether the steady state is unique. Dense generators: count
/// singular values below 1e-10·σ_max. Sparse generators: compare two
/// trace-replaced solves with different replaced rows; `(false, 2)` reports
/// a lower bound on the degeneracy, not an exact count.
pub fn check_uniqueness(lv: &Liouvillian) -> (bool, usize) {
    match lv.storage() {
        LiouvillianStorage::Dense(m) => {
            let decomposition = svd(m);
            let null_dim = decomposition.null_dim(tol::NULLSPACE_REL_TOL);
            (null_dim == 1, null_dim)
        }
        LiouvillianStorage::Sparse(m) => {
            if lv.config().is_noiseless() {
                return (false, 2);
            }
            let d = lv.hilbert_dim();
            let pair = trace_replaced_solve(m, d, 0)
                .and_then(|a| trace_replaced_solve(m, d, d + 1).map(|b| (a, b)));
            let Ok((first, second)) = pair else {
                return (false, 2);
            };
            let a = normalized_hermitian(&ComplexMatrix::unvectorize(&first));
            let b = normalized_hermitian(&ComplexMatrix::unvectorize(&second));
            match (a, b) {
                (Some(a), Some(b)) if a.frobenius_diff(&b) <= tol::SPARSE_AGREEMENT_TOL => {
                    (true, 1)
                }
                _ => (false, 2),
            }
        }
    }
}
