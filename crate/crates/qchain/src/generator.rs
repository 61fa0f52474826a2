//! Master-equation generators for driven, coupled, lossy qubit chains.
//!
//! A chain of N qubits, each coherently driven at Rabi frequency Ω_j in the
//! frame rotating at the drive (detuning δ_j), coupled to its nearest
//! neighbours, and attached to independent local baths producing decay
//! (rate Γ_j, thermal occupation n̄_j) and pure dephasing (rate γ_j). The
//! module builds the coherent and effective Hamiltonians, the Lindblad jump
//! operators, and the vectorized generator ("Liouvillian") of the master
//! equation
//!
//!   dρ/dt = −i(H_eff ρ − ρ H_eff†) + Σ_k L_k ρ L_k†.
//!
//! Sign conventions are pinned by the closed-form two-qubit steady state
//! (see [`crate::steady::analytic_steady_zz`]): with |0⟩ the local ground
//! state, the drive enters as +Ω σ_x and the Ising coupling as
//! +J σ_z⊗σ_z, which makes that closed form an exact null vector of the
//! generator built here — the equivalence is enforced by tests.

use num_complex::Complex64;

use crate::opalg::matrix::c;
use crate::opalg::{embed_local, sigma_minus, sigma_plus, sigma_x, sigma_z, ComplexMatrix};
use crate::sparse::CscMatrix;

/// Errors from configuration validation and generator assembly.
#[derive(Debug, thiserror::Error)]
pub enum GeneratorError {
    #[error("config requires at least one qubit")]
    ZeroQubits,
    #[error("field `{field}` has length {got}, expected {expected}")]
    InvalidLength {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("field `{field}` is negative at site {site}: {value}")]
    NegativeRate {
        field: &'static str,
        site: usize,
        value: f64,
    },
    #[error(
        "general anisotropic exchange (three distinct couplings) is time dependent \
         in the rotating frame and has no time-independent generator; use Zz, or \
         Xxyy for the jx = jy case"
    )]
    UnsupportedCoupling,
    #[error("{n} qubits would need a 4^{n}-dimensional superoperator; the supported maximum is 8")]
    TooManyQubits { n: usize },
}

/// Nearest-neighbour coupling between sites j and j+1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CouplingSpec {
    /// Ising coupling J σ_z⊗σ_z.
    Zz { j_parallel: f64 },
    /// Exchange coupling −J_⊥(σ_x⊗σ_x + σ_y⊗σ_y) − J_∥ σ_z⊗σ_z.
    Xxyy { j_perp: f64, j_parallel: f64 },
    /// General anisotropic exchange. Representable as data so that requests
    /// for it can be *rejected* with a meaningful error: in the rotating
    /// frame it has no time-independent Hamiltonian.
    Xyz { j_x: f64, j_y: f64, j_z: f64 },
}

/// Full physical parameterization of an N-qubit array. All per-site arrays
/// have length `n_qubits`; rates and thermal occupations are non-negative.
#[derive(Clone, Debug, PartialEq)]
pub struct ArrayConfig {
    pub n_qubits: usize,
    /// Rabi drive strength Ω_j per site.
    pub omega_rabi: Vec<f64>,
    /// Drive detuning δ_j per site.
    pub detuning: Vec<f64>,
    /// Decay rate Γ_j per site.
    pub gamma_decay: Vec<f64>,
    /// Pure-dephasing rate γ_j per site.
    pub gamma_dephase: Vec<f64>,
    /// Thermal bath occupation n̄_j per site.
    pub nbar: Vec<f64>,
    pub coupling: CouplingSpec,
}

impl ArrayConfig {
    /// Homogeneous chain at zero detuning and zero temperature — every site
    /// shares the same Ω, Γ, and γ.
    pub fn homogeneous(
        n_qubits: usize,
        omega: f64,
        gamma_decay: f64,
        gamma_dephase: f64,
        coupling: CouplingSpec,
    ) -> Self {
        Self {
            n_qubits,
            omega_rabi: vec![omega; n_qubits],
            detuning: vec![0.0; n_qubits],
            gamma_decay: vec![gamma_decay; n_qubits],
            gamma_dephase: vec![gamma_dephase; n_qubits],
            nbar: vec![0.0; n_qubits],
            coupling,
        }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        if self.n_qubits == 0 {
            return Err(GeneratorError::ZeroQubits);
        }
        let n = self.n_qubits;
        let lengths: [(&'static str, usize); 5] = [
            ("omega_rabi", self.omega_rabi.len()),
            ("detuning", self.detuning.len()),
            ("gamma_decay", self.gamma_decay.len()),
            ("gamma_dephase", self.gamma_dephase.len()),
            ("nbar", self.nbar.len()),
        ];
        for (field, got) in lengths {
            if got != n {
                return Err(GeneratorError::InvalidLength {
                    field,
                    expected: n,
                    got,
                });
            }
        }
        let nonneg: [(&'static str, &[f64]); 4] = [
            ("omega_rabi", &self.omega_rabi),
            ("gamma_decay", &self.gamma_decay),
            ("gamma_dephase", &self.gamma_dephase),
            ("nbar", &self.nbar),
        ];
        for (field, values) in nonneg {
            if let Some((site, &value)) = values.iter().enumerate().find(|(_, v)| **v < 0.0) {
                return Err(GeneratorError::NegativeRate {
                    field,
                    site: site + 1,
                    value,
                });
            }
        }
        Ok(())
    }

    /// Hilbert-space dimension 2^N.
    pub fn hilbert_dim(&self) -> usize {
        1usize << self.n_qubits
    }

    /// Sum of all jump rates — sets the fastest dissipative timescale.
    pub fn total_jump_rate(&self) -> f64 {
        (0..self.n_qubits)
            .map(|j| {
                2.0 * self.gamma_decay[j] * (self.nbar[j] + 1.0)
                    + 2.0 * self.gamma_decay[j] * self.nbar[j]
                    + 2.0 * self.gamma_dephase[j]
            })
            .sum()
    }

    /// True when every decay and dephasing rate is zero.
    pub fn is_noiseless(&self) -> bool {
        self.gamma_decay.iter().all(|&g| g == 0.0)
            && self.gamma_dephase.iter().all(|&g| g == 0.0)
    }
}

/// Coherent (rotating-frame) Hamiltonian:
/// H_coh = −½ Σ_j δ_j σ_z^j + Σ_j Ω_j σ_x^j + (nearest-neighbour coupling).
pub fn build_coherent_hamiltonian(config: &ArrayConfig) -> Result<ComplexMatrix, GeneratorError> {
    config.validate()?;
    let n = config.n_qubits;
    let dim = config.hilbert_dim();
    let mut h = ComplexMatrix::zeros(dim);
    for j in 1..=n {
        let sz = embed_local(&sigma_z(), j, n).expect("validated site");
        let sx = embed_local(&sigma_x(), j, n).expect("validated site");
        h = &h + &sz.scale(c(-0.5 * config.detuning[j - 1], 0.0));
        h = &h + &sx.scale(c(config.omega_rabi[j - 1], 0.0));
    }
    for j in 1..n {
        let pair = coupling_term(&config.coupling, j, n)?;
        h = &h + &pair;
    }
    Ok(h)
}

fn coupling_term(
    coupling: &CouplingSpec,
    j: usize,
    n: usize,
) -> Result<ComplexMatrix, GeneratorError> {
    let zz = || -> ComplexMatrix {
        let a = embed_local(&sigma_z(), j, n).expect("validated site");
        let b = embed_local(&sigma_z(), j + 1, n).expect("validated site");
        &a * &b
    };
    match *coupling {
        CouplingSpec::Zz { j_parallel } => Ok(zz().scale(c(j_parallel, 0.0))),
        CouplingSpec::Xxyy { j_perp, j_parallel } => {
            let xx = {
                let a = embed_local(&sigma_x(), j, n).expect("validated site");
                let b = embed_local(&sigma_x(), j + 1, n).expect("validated site");
                &a * &b
            };
            let yy = {
                let sy = crate::opalg::sigma_y();
                let a = embed_local(&sy, j, n).expect("validated site");
                let b = embed_local(&sy, j + 1, n).expect("validated site");
                &a * &b
            };
            let mut term = (&xx + &yy).scale(c(-j_perp, 0.0));
            term = &term + &zz().scale(c(-j_parallel, 0.0));
            Ok(term)
        }
        CouplingSpec::Xyz { .. } => Err(GeneratorError::UnsupportedCoupling),
    }
}

/// Effective non-Hermitian Hamiltonian absorbing the anticommutator halves
/// of every dissipator:
/// H_eff = H_coh − i Σ_j Γ_j(n̄_j+1) σ_+^j σ_−^j − i Σ_j Γ_j n̄_j σ_−^j σ_+^j
///         − i Σ_j γ_j · I.
pub fn build_effective_hamiltonian(config: &ArrayConfig) -> Result<ComplexMatrix, GeneratorError> {
    let n = config.n_qubits;
    let dim = config.hilbert_dim();
    let mut h = build_coherent_hamiltonian(config)?;
    for j in 1..=n {
        let gamma = config.gamma_decay[j - 1];
        let nbar = config.nbar[j - 1];
        if gamma > 0.0 {
            let sp = embed_local(&sigma_plus(), j, n).expect("validated site");
            let sm = embed_local(&sigma_minus(), j, n).expect("validated site");
            let pm = &sp * &sm; // projects onto the decaying level
            let mp = &sm * &sp;
            h = &h + &pm.scale(c(0.0, -gamma * (nbar + 1.0)));
            h = &h + &mp.scale(c(0.0, -gamma * nbar));
        }
        let dephase = config.gamma_dephase[j - 1];
        if dephase > 0.0 {
            h = &h + &ComplexMatrix::identity(dim).scale(c(0.0, -dephase));
        }
    }
    Ok(h)
}

/// Lindblad jump operators: per site, √(2Γ_j(n̄_j+1))·σ_−^j (decay),
/// √(2Γ_j n̄_j)·σ_+^j (thermal absorption), √(2γ_j)·σ_z^j (dephasing).
/// Zero-rate operators are omitted.
pub fn build_jump_operators(config: &ArrayConfig) -> Result<Vec<ComplexMatrix>, GeneratorError> {
    config.validate()?;
    let n = config.n_qubits;
    let mut jumps = Vec::new();
    for j in 1..=n {
        let gamma = config.gamma_decay[j - 1];
        let nbar = config.nbar[j - 1];
        let dephase = config.gamma_dephase[j - 1];
        if gamma * (nbar + 1.0) > 0.0 {
            let sm = embed_local(&sigma_minus(), j, n).expect("validated site");
            jumps.push(sm.scale(c((2.0 * gamma * (nbar + 1.0)).sqrt(), 0.0)));
        }
        if gamma * nbar > 0.0 {
            let sp = embed_local(&sigma_plus(), j, n).expect("validated site");
            jumps.push(sp.scale(c((2.0 * gamma * nbar).sqrt(), 0.0)));
        }
        if dephase > 0.0 {
            let sz = embed_local(&sigma_z(), j, n).expect("validated site");
            jumps.push(sz.scale(c((2.0 * dephase).sqrt(), 0.0)));
        }
    }
    Ok(jumps)
}

/// Storage for the vectorized generator.
#[derive(Clone, Debug)]
pub enum LiouvillianStorage {
    Dense(ComplexMatrix),
    Sparse(CscMatrix),
}

/// The vectorized generator L of the master equation, acting on
/// column-stacked density matrices: d vec(ρ)/dt = L · vec(ρ) with
/// vec(ρ)[c·d + r] = ρ[r, c].
///
/// Dense storage up to four qubits (superoperator dimension 256), sparse
/// beyond — the Kronecker structure is expanded entry by entry without ever
/// materializing a dense 4^N × 4^N intermediate.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    dim: usize,
    storage: LiouvillianStorage,
    config: ArrayConfig,
}

impl Liouvillian {
    /// Superoperator dimension 4^N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Hilbert-space dimension 2^N.
    pub fn hilbert_dim(&self) -> usize {
        self.config.hilbert_dim()
    }

    pub fn config(&self) -> &ArrayConfig {
        &self.config
    }

    pub fn storage(&self) -> &LiouvillianStorage {
        &self.storage
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, LiouvillianStorage::Sparse(_))
    }

    /// L·x on a column-stacked vector.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        match &self.storage {
            LiouvillianStorage::Dense(m) => m.apply(x),
            LiouvillianStorage::Sparse(m) => m.apply(x),
        }
    }

    /// Unvectorized action on a matrix: dρ/dt.
    pub fn apply_to_matrix(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::unvectorize(&self.apply(&rho.vectorize()))
    }

    /// ‖L·vec(ρ)‖₂ — the steady-state residual of ρ.
    pub fn residual_of(&self, rho: &ComplexMatrix) -> f64 {
        self.apply(&rho.vectorize())
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ‖trace ∘ L‖₂: the norm of the trace functional composed with the
    /// generator. Trace conservation means this is numerically zero.
    pub fn trace_functional_norm(&self) -> f64 {
        let d = self.hilbert_dim();
        let mut w = vec![Complex64::ZERO; self.dim];
        for i in 0..d {
            w[i * d + i] = Complex64::ONE;
        }
        let row = match &self.storage {
            LiouvillianStorage::Sparse(m) => m.left_apply(&w),
            LiouvillianStorage::Dense(m) => {
                let mt = m.transpose();
                mt.apply(&w)
            }
        };
        row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Dimension above which the Liouvillian is stored sparse (N ≥ 5).
const DENSE_SUPEROP_LIMIT: usize = 256;

/// Hard cap on chain length: 4^N superoperators beyond N = 8 are out of
/// scope.
const MAX_QUBITS: usize = 8;

fn nonzeros(m: &ComplexMatrix) -> Vec<(usize, usize, Complex64)> {
    let d = m.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let v = m[(i, j)];
            if v != Complex64::ZERO {
                out.push((i, j, v));
            }
        }
    }
    out
}

/// Triplets of −i(I⊗H) + i(conj(H)⊗I) — the commutator-like part for a
/// (possibly non-Hermitian) Hamiltonian H acting as −i(Hρ − ρH†).
fn hamiltonian_triplets(h: &ComplexMatrix, trips: &mut Vec<(usize, usize, Complex64)>) {
    let d = h.dim();
    let minus_i = c(0.0, -1.0);
    let plus_i = c(0.0, 1.0);
    for (i, j, v) in nonzeros(h) {
        for b in 0..d {
            // (I ⊗ H): block-diagonal copies of H.
            trips.push((b * d + i, b * d + j, minus_i * v));
            // (conj(H) ⊗ I): conj(H)[i, j] spread along the identity.
            trips.push((i * d + b, j * d + b, plus_i * v.conj()));
        }
    }
}

/// Triplets of conj(L_k) ⊗ L_k (the dissipator sandwich).
fn sandwich_triplets(jump: &ComplexMatrix, trips: &mut Vec<(usize, usize, Complex64)>) {
    let d = jump.dim();
    let nz = nonzeros(jump);
    for &(p, pc, va) in &nz {
        for &(q, qc, vb) in &nz {
            trips.push((p * d + q, pc * d + qc, va.conj() * vb));
        }
    }
}

/// Triplets of −½[(I ⊗ M) + (Mᵀ ⊗ I)] for M = L†L.
fn anticommutator_triplets(m: &ComplexMatrix, trips: &mut Vec<(usize, usize, Complex64)>) {
    let d = m.dim();
    for (i, j, v) in nonzeros(m) {
        let half = v * -0.5;
        for b in 0..d {
            trips.push((b * d + i, b * d + j, half));
            // (Mᵀ ⊗ I)[j·d+r, i·d+r] = M[i, j].
            trips.push((j * d + b, i * d + b, half));
        }
    }
}

fn assemble(
    dim: usize,
    trips: Vec<(usize, usize, Complex64)>,
    config: ArrayConfig,
) -> Liouvillian {
    let storage = if dim <= DENSE_SUPEROP_LIMIT {
        let mut m = ComplexMatrix::zeros(dim);
        for (r, col, v) in trips {
            m[(r, col)] += v;
        }
        LiouvillianStorage::Dense(m)
    } else {
        LiouvillianStorage::Sparse(CscMatrix::from_triplets(dim, trips))
    };
    Liouvillian {
        dim,
        storage,
        config,
    }
}

/// Build the Liouvillian from the effective-Hamiltonian formulation:
/// L = −i[(I⊗H_eff) − (conj(H_eff)⊗I)] + Σ_k conj(L_k)⊗L_k.
pub fn build_liouvillian(config: &ArrayConfig) -> Result<Liouvillian, GeneratorError> {
    config.validate()?;
    if config.n_qubits > MAX_QUBITS {
        return Err(GeneratorError::TooManyQubits {
            n: config.n_qubits,
        });
    }
    let h_eff = build_effective_hamiltonian(config)?;
    let jumps = build_jump_operators(config)?;
    let d = config.hilbert_dim();
    let dim = d * d;
    let mut trips = Vec::new();
    hamiltonian_triplets(&h_eff, &mut trips);
    for jump in &jumps {
        sandwich_triplets(jump, &mut trips);
    }
    Ok(assemble(dim, trips, config.clone()))
}

/// Build the Liouvillian from the textbook dissipator formulation:
/// L = −i[(I⊗H_coh) − (H_cohᵀ⊗I)] + Σ_k [conj(L_k)⊗L_k − ½(I⊗L_k†L_k)
/// − ½((L_k†L_k)ᵀ⊗I)]. Must agree entrywise with [`build_liouvillian`];
/// kept as an independent construction for cross-validation.
pub fn build_liouvillian_from_dissipators(
    config: &ArrayConfig,
) -> Result<Liouvillian, GeneratorError> {
    config.validate()?;
    if config.n_qubits > MAX_QUBITS {
        return Err(GeneratorError::TooManyQubits {
            n: config.n_qubits,
        });
    }
    let h_coh = build_coherent_hamiltonian(config)?;
    let jumps = build_jump_operators(config)?;
    let d = config.hilbert_dim();
    let dim = d * d;
    let mut trips = Vec::new();
    hamiltonian_triplets(&h_coh, &mut trips);
    for jump in &jumps {
        sandwich_triplets(jump, &mut trips);
        let m = &jump.dagger() * jump;
        anticommutator_triplets(&m, &mut trips);
    }
    Ok(assemble(dim, trips, config.clone()))
}

/// Bose–Einstein thermal occupation n̄ = 1/(e^{ω₀/T} − 1) in natural units
/// (ħ = k_B = 1). T = 0 is the zero-occupation limit.
pub fn nbar_from_temperature(omega0: f64, temperature: f64) -> f64 {
    assert!(omega0 > 0.0, "omega0 must be positive");
    assert!(temperature >= 0.0, "temperature must be non-negative");
    if temperature == 0.0 {
        return 0.0;
    }
    let x = omega0 / temperature;
    1.0 / (x.exp() - 1.0)
}

/// Advisory warning that a parameter ratio leaves the weak-drive /
/// weak-coupling regime the rotating-frame model assumes.
#[derive(Clone, Debug, PartialEq)]
pub struct RegimeWarning {
    /// Human-readable name of the offending quantity, e.g. `omega_rabi[2]`.
    pub quantity: String,
    /// Ratio of the quantity to ω₀.
    pub ratio: f64,
}

impl std::fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} / omega0 = {:.3} exceeds the advisory limit 0.1",
            self.quantity, self.ratio
        )
    }
}

/// Check drive, thermal-decay, detuning, and coupling strengths against the
/// qubit frequency ω₀. Ratios strictly above 0.1 produce warnings (the
/// boundary value itself is accepted); nothing is rejected.
pub fn validate_regime(config: &ArrayConfig, omega0: f64) -> Vec<RegimeWarning> {
    let limit = crate::tol::REGIME_RATIO_LIMIT;
    let mut warnings = Vec::new();
    let mut check = |quantity: String, value: f64| {
        let ratio = value.abs() / omega0;
        if ratio > limit {
            warnings.push(RegimeWarning { quantity, ratio });
        }
    };
    for j in 0..config.n_qubits {
        check(format!("omega_rabi[{}]", j + 1), config.omega_rabi[j]);
        check(
            format!("gamma_decay[{}]*nbar[{}]", j + 1, j + 1),
            config.gamma_decay[j] * config.nbar[j],
        );
        check(format!("detuning[{}]", j + 1), config.detuning[j]);
    }
    match config.coupling {
        CouplingSpec::Zz { j_parallel } => check("j_parallel".into(), j_parallel),
        CouplingSpec::Xxyy { j_perp, j_parallel } => {
            check("j_perp".into(), j_perp);
            check("j_parallel".into(), j_parallel);
        }
        CouplingSpec::Xyz { j_x, j_y, j_z } => {
            check("j_x".into(), j_x);
            check("j_y".into(), j_y);
            check("j_z".into(), j_z);
        }
    }
    warnings
}
