//! Information-theoretic diagnostics of chain states: entropy, mutual
//! information, two-qubit entanglement measures, positivity tests, and
//! single-site localization probabilities.
//!
//! All entropies are base-2 (bits). Entanglement of two qubits is measured
//! by the concurrence C and the entanglement of formation
//! E_F = h((1 + √(1−C²))/2) with h the binary entropy, both in [0, 1].

use crate::generator::{build_liouvillian, ArrayConfig};
use crate::opalg::matrix::c;
use crate::opalg::{
    hermitian_eigensystem, partial_trace, partial_transpose, ComplexMatrix, DensityMatrix,
    OpalgError,
};
use crate::steady::{solve_steady_numeric, SolveError};
use crate::tol;

/// Errors from measure evaluation.
#[derive(Debug, thiserror::Error)]
pub enum MeasureError {
    #[error("measure requires exactly two qubits, got {got}")]
    WrongQubitCount { got: usize },
    #[error("site {site} out of range for {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },
    #[error("bipartition does not match a {n_qubits}-qubit state")]
    BipartitionMismatch { n_qubits: usize },
    #[error(transparent)]
    Opalg(#[from] OpalgError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A cut of the chain into two disjoint, jointly exhaustive, non-empty site
/// sets (1-based site labels, stored ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    n_qubits: usize,
    part_a: Vec<usize>,
    part_b: Vec<usize>,
}

impl Bipartition {
    /// Build a cut from one side; the other side is the complement. Fails
    /// when `part_a` is empty, exhaustive, repeats a site, or names a site
    /// outside 1..=n_qubits.
    pub fn new(part_a: &[usize], n_qubits: usize) -> Result<Self, MeasureError> {
        let mut a: Vec<usize> = part_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != part_a.len() || a.is_empty() || a.len() >= n_qubits {
            return Err(MeasureError::BipartitionMismatch { n_qubits });
        }
        if let Some(&site) = a.iter().find(|&&s| s == 0 || s > n_qubits) {
            return Err(MeasureError::SiteOutOfRange { site, n_qubits });
        }
        let b: Vec<usize> = (1..=n_qubits).filter(|s| !a.contains(s)).collect();
        Ok(Self {
            n_qubits,
            part_a: a,
            part_b: b,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn part_a(&self) -> &[usize] {
        &self.part_a
    }

    pub fn part_b(&self) -> &[usize] {
        &self.part_b
    }
}

/// Binary entropy h(x) = −x·log₂x − (1−x)·log₂(1−x), with h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    assert!(
        (-1e-12..=1.0 + 1e-12).contains(&x),
        "binary entropy argument must lie in [0, 1]"
    );
    let x = x.clamp(0.0, 1.0);
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.log2();
    }
    if x < 1.0 {
        h -= (1.0 - x) * (1.0 - x).log2();
    }
    h.max(0.0)
}

fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l >= tol::ENTROPY_EIG_FLOOR)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

fn entropy_raw(m: &ComplexMatrix) -> f64 {
    let es = hermitian_eigensystem(m).expect("states are Hermitian by construction");
    entropy_of_spectrum(&es.eigenvalues)
}

/// Von Neumann entropy S(ρ) = −Σ λᵢ log₂ λᵢ ∈ [0, N].
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_raw(rho.matrix())
}

/// Quantum mutual information across a cut:
/// I_M = S(ρ_A) + S(ρ_B) − S(ρ_AB) ≥ 0.
pub fn mutual_information(rho: &DensityMatrix, cut: &Bipartition) -> Result<f64, MeasureError> {
    if cut.n_qubits() != rho.n_qubits() {
        return Err(MeasureError::BipartitionMismatch {
            n_qubits: rho.n_qubits(),
        });
    }
    let rho_a = partial_trace(rho, cut.part_a())?;
    let rho_b = partial_trace(rho, cut.part_b())?;
    let mi = von_neumann_entropy(&rho_a) + von_neumann_entropy(&rho_b) - von_neumann_entropy(rho);
    Ok(mi.max(0.0))
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<(), MeasureError> {
    if rho.n_qubits() != 2 {
        return Err(MeasureError::WrongQubitCount {
            got: rho.n_qubits(),
        });
    }
    Ok(())
}

/// σ_y ⊗ σ_y, the spin-flip kernel of the concurrence.
fn spin_flip_kernel() -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(4);
    s[(0, 3)] = c(-1.0, 0.0);
    s[(1, 2)] = c(1.0, 0.0);
    s[(2, 1)] = c(1.0, 0.0);
    s[(3, 0)] = c(-1.0, 0.0);
    s
}

/// Hermitian square root via spectral decomposition (negative roundoff
/// eigenvalues clamped to zero).
fn hermitian_sqrt(m: &ComplexMatrix) -> ComplexMatrix {
    let es = hermitian_eigensystem(m).expect("input is Hermitian by construction");
    let dim = m.dim();
    let mut out = ComplexMatrix::zeros(dim);
    for (idx, &l) in es.eigenvalues.iter().enumerate() {
        let w = l.max(0.0).sqrt();
        if w == 0.0 {
            continue;
        }
        for i in 0..dim {
            let vi = es.eigenvectors[(i, idx)];
            for j in 0..dim {
                out[(i, j)] += vi * es.eigenvectors[(j, idx)].conj() * w;
            }
        }
    }
    out
}

/// Two-qubit concurrence C(ρ) = max{0, μ₁ − μ₂ − μ₃ − μ₄} where the μᵢ are
/// the square roots of the eigenvalues of ρ·(σ_y⊗σ_y)·ρ*·(σ_y⊗σ_y) in
/// decreasing order, evaluated through the Hermitian form
/// √ρ · (σ_y⊗σ_y) ρ* (σ_y⊗σ_y) · √ρ for numerical stability.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    require_two_qubits(rho)?;
    let m = rho.matrix();
    let s = spin_flip_kernel();
    let tilde = &(&s * &m.conjugate()) * &s;
    let root = hermitian_sqrt(m);
    let herm = (&(&root * &tilde) * &root).hermitize();
    let es = hermitian_eigensystem(&herm)?;
    let mut mu: Vec<f64> = es.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    let value = mu[0] - mu[1] - mu[2] - mu[3];
    Ok(value.clamp(0.0, 1.0))
}

/// Entanglement of formation E_F = h((1 + √(1 − C²))/2), a monotone
/// function of the concurrence; 0 for separable states, 1 for Bell states.
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64, MeasureError> {
    let c_val = concurrence(rho)?;
    Ok(eof_from_concurrence(c_val))
}

/// E_F as a function of concurrence alone.
pub fn eof_from_concurrence(c_val: f64) -> f64 {
    let c_val = c_val.clamp(0.0, 1.0);
    let x = 0.5 * (1.0 + (1.0 - c_val * c_val).max(0.0).sqrt());
    binary_entropy(x)
}

/// Peres–Horodecki test: a two-qubit state is entangled iff its partial
/// transpose has a negative eigenvalue. Minimum eigenvalues within the
/// ±1e-10 dead band count as separable. Returns (entangled, min eigenvalue).
pub fn ppt_test(rho: &DensityMatrix) -> Result<(bool, f64), MeasureError> {
    require_two_qubits(rho)?;
    let pt = partial_transpose(rho, 2)?;
    let es = hermitian_eigensystem(&pt)?;
    let min_eig = es.eigenvalues.first().copied().unwrap_or(0.0);
    Ok((min_eig < -tol::DEAD_BAND, min_eig))
}

/// Localization diagnostics of one site's reduced state ρ₁.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationReport {
    /// max_± ⟨±z|ρ₁|±z⟩ — probability of the likelier σ_z eigenstate.
    pub p_z: f64,
    /// max_± ⟨±x|ρ₁|±x⟩ — probability of the likelier σ_x eigenstate.
    pub p_x: f64,
}

/// Probabilities that one site, reduced to its single-qubit state, occupies
/// its likelier σ_z eigenstate (localization) or σ_x eigenstate
/// (delocalization). Both lie in [1/2, 1].
pub fn localization_probabilities(
    rho: &DensityMatrix,
    site: usize,
) -> Result<LocalizationReport, MeasureError> {
    if site == 0 || site > rho.n_qubits() {
        return Err(MeasureError::SiteOutOfRange {
            site,
            n_qubits: rho.n_qubits(),
        });
    }
    let reduced = partial_trace(rho, &[site])?;
    let m = reduced.matrix();
    let p00 = m[(0, 0)].re;
    let p11 = m[(1, 1)].re;
    let p_z = p00.max(p11).clamp(0.5, 1.0);
    // ⟨±x|ρ|±x⟩ = 1/2 ± Re ρ₀₁.
    let p_x = (0.5 + m[(0, 1)].re.abs()).clamp(0.5, 1.0);
    Ok(LocalizationReport { p_z, p_x })
}

/// Steady-state entanglement of formation along a decay-rate grid: for each
/// Γ the base configuration's decay rates are replaced by Γ on every site,
/// the steady state is solved numerically, and E_F is evaluated. The base
/// configuration must describe exactly two qubits, and each grid point must
/// keep at least one noise rate positive.
pub fn steady_entanglement_curve(
    base: &ArrayConfig,
    gamma_grid: &[f64],
) -> Result<Vec<(f64, f64)>, MeasureError> {
    if base.n_qubits != 2 {
        return Err(MeasureError::WrongQubitCount { got: base.n_qubits });
    }
    let mut curve = Vec::with_capacity(gamma_grid.len());
    for &gamma in gamma_grid {
        let mut cfg = base.clone();
        cfg.gamma_decay = vec![gamma; cfg.n_qubits];
        let lv = build_liouvillian(&cfg).map_err(SolveError::from)?;
        let report = solve_steady_numeric(&lv)?;
        curve.push((gamma, entanglement_of_formation(&report.state)?));
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady::analytic_steady_zz;
    use approx::assert_abs_diff_eq;

    fn bell_phi_plus() -> DensityMatrix {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_state_vector(&[c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv, 0.0)], 2)
            .unwrap()
    }

    fn werner(p: f64) -> DensityMatrix {
        let bell = bell_phi_plus();
        let mut m = ComplexMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = bell.matrix()[(i, j)] * p;
            }
            m[(i, i)] += c((1.0 - p) / 4.0, 0.0);
        }
        DensityMatrix::new(m, 2).unwrap()
    }

    #[test]
    fn entropy_reference_values() {
        assert_abs_diff_eq!(von_neumann_entropy(&bell_phi_plus()), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            von_neumann_entropy(&DensityMatrix::maximally_mixed(2)),
            2.0,
            epsilon = 1e-12
        );
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 0)] = c(0.9, 0.0);
        m[(1, 1)] = c(0.1, 0.0);
        let rho = DensityMatrix::new(m, 1).unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&rho),
            0.4689955935892812,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(binary_entropy(0.9), 0.4689955935892812, epsilon = 1e-15);
    }

    #[test]
    fn mutual_information_reference_values() {
        let cut = Bipartition::new(&[1], 2).unwrap();
        assert_eq!(cut.part_b(), &[2]);
        assert_abs_diff_eq!(
            mutual_information(&bell_phi_plus(), &cut).unwrap(),
            2.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            mutual_information(&DensityMatrix::maximally_mixed(2), &cut).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // Product state |0⟩⊗|+⟩.
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let product =
            DensityMatrix::from_state_vector(&[c(inv, 0.0), c(inv, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 2)
                .unwrap();
        assert_abs_diff_eq!(
            mutual_information(&product, &cut).unwrap(),
            0.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn mutual_information_of_reference_steady_state() {
        let cut = Bipartition::new(&[1], 2).unwrap();
        let mi = mutual_information(&analytic_steady_zz(1.0, 1.5), &cut).unwrap();
        assert_abs_diff_eq!(mi, 0.23732381913876288, epsilon = 1e-10);
    }

    #[test]
    fn concurrence_reference_values() {
        assert_abs_diff_eq!(concurrence(&bell_phi_plus()).unwrap(), 1.0, epsilon = 1e-10);
        let ground = DensityMatrix::basis_state(2, 0);
        assert_abs_diff_eq!(concurrence(&ground).unwrap(), 0.0, epsilon = 1e-12);
        // At the threshold r = 1/(2s) the closed-form state is exactly
        // marginal: concurrence 0.
        let boundary = analytic_steady_zz(1.0 / 3.0, 1.5);
        assert!(concurrence(&boundary).unwrap() < 1e-10);
        assert!(concurrence(&analytic_steady_zz(1.0, 1.5)).unwrap() > 1e-3);
    }

    #[test]
    fn concurrence_symmetric_in_coupling_sign() {
        for r in [0.5, 1.0, 2.0] {
            let plus = concurrence(&analytic_steady_zz(r, 1.5)).unwrap();
            let minus = concurrence(&analytic_steady_zz(r, -1.5)).unwrap();
            assert_abs_diff_eq!(plus, minus, epsilon = 1e-12);
        }
    }

    #[test]
    fn eof_reference_values() {
        assert_abs_diff_eq!(
            entanglement_of_formation(&bell_phi_plus()).unwrap(),
            1.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            entanglement_of_formation(&DensityMatrix::basis_state(2, 1)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // Werner state with concurrence 0.6 → E_F = h(0.9).
        let w = werner(2.2 / 3.0);
        assert_abs_diff_eq!(concurrence(&w).unwrap(), 0.6, epsilon = 1e-10);
        assert_abs_diff_eq!(
            entanglement_of_formation(&w).unwrap(),
            0.4689955935892812,
            epsilon = 1e-9
        );
    }

    #[test]
    fn ppt_reference_values() {
        let (entangled, min_eig) = ppt_test(&bell_phi_plus()).unwrap();
        assert!(entangled);
        assert_abs_diff_eq!(min_eig, -0.5, epsilon = 1e-10);
        let (entangled, min_eig) = ppt_test(&DensityMatrix::maximally_mixed(2)).unwrap();
        assert!(!entangled);
        assert_abs_diff_eq!(min_eig, 0.25, epsilon = 1e-12);
        let (entangled, _) = ppt_test(&analytic_steady_zz(1.0, 1.5)).unwrap();
        assert!(entangled);
    }

    #[test]
    fn localization_reference_values() {
        let zero = DensityMatrix::basis_state(1, 0);
        let report = localization_probabilities(&zero, 1).unwrap();
        assert_abs_diff_eq!(report.p_z, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.p_x, 0.5, epsilon = 1e-12);

        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DensityMatrix::from_state_vector(&[c(inv, 0.0), c(inv, 0.0)], 1).unwrap();
        let report = localization_probabilities(&plus, 1).unwrap();
        assert_abs_diff_eq!(report.p_z, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(report.p_x, 1.0, epsilon = 1e-12);

        let mixed = DensityMatrix::maximally_mixed(1);
        let report = localization_probabilities(&mixed, 1).unwrap();
        assert_abs_diff_eq!(report.p_z, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(report.p_x, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn wrong_qubit_count_rejected() {
        let single = DensityMatrix::maximally_mixed(1);
        assert!(matches!(
            concurrence(&single),
            Err(MeasureError::WrongQubitCount { got: 1 })
        ));
        assert!(matches!(
            ppt_test(&single),
            Err(MeasureError::WrongQubitCount { got: 1 })
        ));
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(&[], 3).is_err());
        assert!(Bipartition::new(&[1, 2, 3], 3).is_err());
        assert!(Bipartition::new(&[4], 3).is_err());
        assert!(Bipartition::new(&[2, 2], 3).is_err());
        let cut = Bipartition::new(&[3, 1], 4).unwrap();
        assert_eq!(cut.part_a(), &[1, 3]);
        assert_eq!(cut.part_b(), &[2, 4]);
    }

    #[test]
    fn entanglement_curve_zero_below_threshold() {
        let base = ArrayConfig::homogeneous(
            2,
            1.0,
            1.0,
            0.0,
            crate::generator::CouplingSpec::Zz { j_parallel: 1.5 },
        );
        // Threshold at Γ = Ω/3; sample strictly below it.
        let curve = steady_entanglement_curve(&base, &[0.05, 0.15, 0.3]).unwrap();
        for (_, eof) in &curve {
            assert!(eof.abs() < 1e-9);
        }
        // And a point above threshold is entangled.
        let above = steady_entanglement_curve(&base, &[1.0]).unwrap();
        assert!(above[0].1 > 1e-4);
    }
}
