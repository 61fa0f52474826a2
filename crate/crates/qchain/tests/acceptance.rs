//! Acceptance suite: ten end-to-end checks covering the closed forms, the
//! threshold machinery, dephasing behaviour, the six-qubit solver path, the
//! propagation oracle, and measure consistency. Each test prints one
//! `criterion NN: PASS` line (visible with `--nocapture`); the harness
//! itself provides the pass/fail verdict per criterion.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use qchain::opalg::{partial_trace, ComplexMatrix, DensityMatrix};
use qchain::{
    analytic_steady_zz, approx_combined_window, binary_entropy, build_liouvillian, concurrence,
    entanglement_of_formation, localization_probabilities, mutual_information, ppt_test,
    propagate_to_steady, scan_threshold_bisection, solve_steady_numeric,
    steady_spectrum_analytic, threshold_xxyy, threshold_zz, ArrayConfig, Bipartition,
    CouplingSpec,
};

// Pinned acceptance tolerances.
const CLOSED_FORM_TOL: f64 = 1e-9;
const THRESHOLD_TOL: f64 = 1e-6;
const SEPARABLE_TOL: f64 = 1e-12;
const MIXED_STATE_TOL: f64 = 1e-9;
const WINDOW_REL_TOL: f64 = 0.15;
const MONOTONE_SLACK: f64 = 1e-9;
const PROPAGATION_TOL: f64 = 1e-6;
const ENTANGLEMENT_DEAD_BAND: f64 = 1e-10;

fn zz_config(n: usize, omega: f64, j: f64, gamma: f64, dephasing: f64) -> ArrayConfig {
    ArrayConfig::homogeneous(n, omega, gamma, dephasing, CouplingSpec::Zz { j_parallel: j })
}

fn solve(cfg: &ArrayConfig) -> qchain::SteadyStateReport {
    let lv = build_liouvillian(cfg).expect("valid configuration");
    solve_steady_numeric(&lv).expect("steady state solves")
}

fn log_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let ratio = (stop / start).powf(1.0 / (count as f64 - 1.0));
    (0..count).map(|i| start * ratio.powi(i as i32)).collect()
}

/// One interior peak: non-decreasing up to the argmax, non-increasing after,
/// with a small slack for solver noise. Flat stretches (e.g. an exact-zero
/// plateau below a threshold) are allowed.
fn assert_single_interior_peak(label: &str, values: &[f64]) {
    let argmax = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap();
    assert!(
        argmax > 0 && argmax < values.len() - 1,
        "{label}: peak must be interior, argmax = {argmax}"
    );
    for w in values[..=argmax].windows(2) {
        assert!(
            w[1] >= w[0] - MONOTONE_SLACK,
            "{label}: dip before the peak ({} -> {})",
            w[0],
            w[1]
        );
    }
    for w in values[argmax..].windows(2) {
        assert!(
            w[1] <= w[0] + MONOTONE_SLACK,
            "{label}: rise after the peak ({} -> {})",
            w[0],
            w[1]
        );
    }
}

/// Deterministic pseudo-random stream (splitmix-style) so the randomized
/// criteria are reproducible without extra dependencies.
struct Rng(u64);

impl Rng {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }
}

/// Random density matrix of the given rank via a Ginibre-style factor.
fn random_state(rng: &mut Rng, rank: usize) -> DensityMatrix {
    let d = 4;
    let mut g = vec![vec![num_complex::Complex64::new(0.0, 0.0); rank]; d];
    for row in g.iter_mut() {
        for entry in row.iter_mut() {
            *entry = num_complex::Complex64::new(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        }
    }
    let mut m = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[i][k] * g[j][k].conj();
            }
            m[(i, j)] = acc;
        }
    }
    let tr = m.trace();
    let m = m.scale(num_complex::Complex64::new(1.0, 0.0) / tr).hermitize();
    DensityMatrix::new(m, 2).expect("Ginibre construction yields a state")
}

/// Random single-qubit state as a 2×2 matrix.
fn random_qubit(rng: &mut Rng) -> Vec<Vec<num_complex::Complex64>> {
    // Bloch vector strictly inside the ball.
    let len = rng.uniform().cbrt() * 0.99;
    let cos_t = rng.range(-1.0, 1.0);
    let sin_t = (1.0 - cos_t * cos_t).sqrt();
    let phi = rng.range(0.0, std::f64::consts::TAU);
    let (x, y, z) = (
        len * sin_t * phi.cos(),
        len * sin_t * phi.sin(),
        len * cos_t,
    );
    let c = num_complex::Complex64::new;
    vec![
        vec![c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y)],
        vec![c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)],
    ]
}

/// Product of two random single-qubit states (separable by construction).
fn random_product_state(rng: &mut Rng) -> DensityMatrix {
    let a = random_qubit(rng);
    let b = random_qubit(rng);
    let mut m = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[i][j] * b[k][l];
                }
            }
        }
    }
    DensityMatrix::new(m.hermitize(), 2).expect("product state")
}

fn bell_state() -> DensityMatrix {
    let mut m = ComplexMatrix::zeros(4);
    let h = num_complex::Complex64::new(0.5, 0.0);
    m[(0, 0)] = h;
    m[(0, 3)] = h;
    m[(3, 0)] = h;
    m[(3, 3)] = h;
    DensityMatrix::new(m, 2).unwrap()
}

#[test]
fn criterion_01_closed_form_agreement() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for &r in &[0.1, 0.35, 0.7, 1.0, 2.0, 10.0] {
        for &s in &[0.5, 1.5, 4.0] {
            let report = solve(&zz_config(2, 1.0, s, r, 0.0));
            let reference = analytic_steady_zz(r, s);
            let diff = report.state.matrix().frobenius_diff(reference.matrix());
            worst = worst.max(diff);
            assert!(
                diff < CLOSED_FORM_TOL,
                "numeric vs closed form at r={r}, s={s}: Frobenius diff {diff:e}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "18-point grid took {elapsed:?}, budget 1 s"
    );
    println!(
        "criterion 01: PASS — 18 steady states within {worst:.2e} of the closed form in {elapsed:?}"
    );
}

#[test]
fn criterion_02_decay_threshold_bisection() {
    for &s in &[0.5, 1.0, 1.5, 2.0, 4.0] {
        let expected = 1.0 / (2.0 * s);
        let closed = threshold_zz(1.0, s).lower.expect("finite threshold");
        assert!(
            (closed - expected).abs() < 1e-12,
            "closed-form threshold at s={s}"
        );
        let family = move |gamma: f64| zz_config(2, 1.0, s, gamma, 0.0);
        let found = scan_threshold_bisection(family, (0.6 * expected, 1.7 * expected), 1e-7)
            .expect("bracket straddles the edge")
            .lower
            .expect("crossing found");
        assert!(
            (found - expected).abs() < THRESHOLD_TOL,
            "bisection at s={s}: got {found}, expected {expected}"
        );
    }
    println!(
        "criterion 02: PASS — bisected decay thresholds match Ω²/2J within {THRESHOLD_TOL:e} for five couplings"
    );
}

#[test]
fn criterion_03_exchange_coupling_thresholds() {
    // Isotropic exchange never entangles the steady state.
    let mut worst: f64 = 0.0;
    for gamma in log_grid(0.01, 50.0, 20) {
        let cfg = ArrayConfig::homogeneous(
            2,
            1.0,
            gamma,
            0.0,
            CouplingSpec::Xxyy {
                j_perp: 0.7,
                j_parallel: 0.7,
            },
        );
        let c = concurrence(&solve(&cfg).state).unwrap();
        worst = worst.max(c);
        assert!(
            c < SEPARABLE_TOL,
            "isotropic exchange shows concurrence {c:e} at gamma={gamma}"
        );
    }
    // Anisotropy d = J⊥ − J∥ reproduces the zz threshold law with |d|.
    let expected = 1.0 / 3.0;
    let closed = threshold_xxyy(1.0, 2.0, 0.5).lower.unwrap();
    assert!((closed - expected).abs() < 1e-12);
    let family = |gamma: f64| {
        ArrayConfig::homogeneous(
            2,
            1.0,
            gamma,
            0.0,
            CouplingSpec::Xxyy {
                j_perp: 2.0,
                j_parallel: 0.5,
            },
        )
    };
    let found = scan_threshold_bisection(family, (0.2, 0.5), 1e-7)
        .unwrap()
        .lower
        .unwrap();
    assert!(
        (found - expected).abs() < THRESHOLD_TOL,
        "anisotropic threshold: got {found}, expected {expected}"
    );
    println!(
        "criterion 03: PASS — isotropic exchange separable (max C {worst:.1e}), anisotropy d=1.5 thresholds at Ω/3"
    );
}

#[test]
fn criterion_04_dephasing_only_fully_mixed() {
    // Two qubits, dense path.
    let report = solve(&zz_config(2, 1.0, 1.5, 0.0, 0.5));
    assert_eq!(report.null_space_dim, 1);
    let m = report.state.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let expected = if i == j { 0.25 } else { 0.0 };
            let diff = (m[(i, j)] - num_complex::Complex64::new(expected, 0.0)).norm();
            assert!(
                diff < MIXED_STATE_TOL,
                "two-qubit dephasing steady state entry ({i},{j}) off by {diff:e}"
            );
        }
    }
    // Six qubits, sparse path; sample the diagonal and a few off-diagonals.
    let report = solve(&zz_config(6, 1.0, 1.5, 0.0, 0.5));
    assert_eq!(report.null_space_dim, 1);
    let m = report.state.matrix();
    let uniform = 1.0 / 64.0;
    for &i in &[0usize, 1, 7, 13, 21, 32, 40, 50, 60, 63] {
        let diff = (m[(i, i)].re - uniform).abs().max(m[(i, i)].im.abs());
        assert!(
            diff < MIXED_STATE_TOL,
            "six-qubit dephasing diagonal entry {i} off by {diff:e}"
        );
    }
    for &(i, j) in &[(0usize, 1usize), (5, 40), (62, 63), (17, 48)] {
        assert!(
            m[(i, j)].norm() < MIXED_STATE_TOL,
            "six-qubit dephasing off-diagonal ({i},{j}) is {:e}",
            m[(i, j)].norm()
        );
    }
    println!(
        "criterion 04: PASS — dephasing-only steady states are fully mixed for two and six qubits"
    );
}

#[test]
fn criterion_05_spectrum_localization_and_entanglement_shape() {
    let s = 1.5;
    let grid = log_grid(0.1, 100.0, 30);
    // Largest steady eigenvalue grows monotonically toward pure localization.
    let mut previous = f64::NEG_INFINITY;
    for &r in &grid {
        let top = steady_spectrum_analytic(r, s)[3];
        assert!(
            top > previous,
            "largest eigenvalue not increasing at r={r}: {top} <= {previous}"
        );
        previous = top;
    }
    assert!(
        steady_spectrum_analytic(100.0, s)[3] > 0.999,
        "strong decay must purify the steady state"
    );
    // Strong decay localizes into the shared ground state.
    let report = solve(&zz_config(2, 1.0, s, 100.0, 0.0));
    let fidelity = report.state.matrix()[(0, 0)].re;
    assert!(
        fidelity > 0.999,
        "ground-state fidelity at r=100 is {fidelity}"
    );
    let loc = localization_probabilities(&report.state, 1).unwrap();
    assert!(loc.p_z > 0.999, "site localization p_z = {}", loc.p_z);
    // Entanglement of formation: flat zero below threshold, one interior
    // peak, decay back to zero.
    let eof: Vec<f64> = grid
        .iter()
        .map(|&r| entanglement_of_formation(&solve(&zz_config(2, 1.0, s, r, 0.0)).state).unwrap())
        .collect();
    assert!(
        eof[0] < SEPARABLE_TOL,
        "below the threshold the steady state is separable"
    );
    // Peak entanglement of formation at this coupling is ≈ 0.098.
    assert!(eof.iter().cloned().fold(0.0, f64::max) > 0.08);
    assert_single_interior_peak("entanglement of formation vs decay", &eof);
    println!(
        "criterion 05: PASS — spectrum monotone, strong-decay localization > 0.999, single-peaked entanglement"
    );
}

#[test]
fn criterion_06_combined_noise_window() {
    let s = 5.0;
    let (approx_lower, approx_upper) =
        approx_combined_window(s).expect("combined window exists at s = 5");
    let family = move |gamma: f64| zz_config(2, 1.0, s, gamma, gamma);
    let lower = scan_threshold_bisection(family, (0.01, 0.3), 1e-8)
        .unwrap()
        .lower
        .unwrap();
    let upper = scan_threshold_bisection(family, (0.3, 1.0), 1e-8)
        .unwrap()
        .lower
        .unwrap();
    let lower_err = (lower - approx_lower).abs() / approx_lower;
    let upper_err = (upper - approx_upper).abs() / approx_upper;
    let (lower_pct, upper_pct) = (100.0 * lower_err, 100.0 * upper_err);
    assert!(
        lower_err < WINDOW_REL_TOL,
        "lower edge: numeric {lower}, approximate {approx_lower} ({lower_pct:.1}% off)"
    );
    assert!(
        upper_err < WINDOW_REL_TOL,
        "upper edge: numeric {upper}, approximate {approx_upper} ({upper_pct:.1}% off)"
    );
    // Near the onset the approximation predicts no window; check what the
    // numerics say and report (informational, not a failure).
    let s_tight = 3.0;
    assert!(approx_combined_window(s_tight).is_none());
    let entangled_points = log_grid(0.02, 5.0, 15)
        .into_iter()
        .filter(|&g| {
            concurrence(&solve(&zz_config(2, 1.0, s_tight, g, g)).state).unwrap()
                > ENTANGLEMENT_DEAD_BAND
        })
        .count();
    if entangled_points == 0 {
        println!(
            "criterion 06: PASS — equal-rate window at s=5 within {lower_pct:.1}%/{upper_pct:.1}% of the approximation; none found at s=3, matching it"
        );
    } else {
        println!(
            "criterion 06: PASS — equal-rate window at s=5 within {lower_pct:.1}%/{upper_pct:.1}%; note: {entangled_points} entangled point(s) at s=3 where the approximation predicts none"
        );
    }
}

#[test]
fn criterion_07_dephasing_monotonicity() {
    let s = 1.5;
    let gammas = log_grid(0.05, 20.0, 20);
    let dephasings: Vec<f64> = (0..10).map(|i| 0.1 * i as f64).collect();
    // eof[k][i]: dephasing index k, decay index i.
    let eof: Vec<Vec<f64>> = dephasings
        .iter()
        .map(|&dephasing| {
            gammas
                .iter()
                .map(|&gamma| {
                    entanglement_of_formation(&solve(&zz_config(2, 1.0, s, gamma, dephasing)).state)
                        .unwrap()
                })
                .collect()
        })
        .collect();
    for i in 0..gammas.len() {
        for k in 1..dephasings.len() {
            assert!(
                eof[k][i] <= eof[k - 1][i] + MONOTONE_SLACK,
                "entanglement grew with dephasing at gamma={}, dephasing {} -> {}",
                gammas[i],
                dephasings[k - 1],
                dephasings[k]
            );
        }
    }
    // Strong dephasing kills the window entirely: a finite critical rate.
    for &k in &[8usize, 9] {
        let col_max = eof[k].iter().cloned().fold(0.0, f64::max);
        assert!(
            col_max < ENTANGLEMENT_DEAD_BAND,
            "dephasing {} still shows entanglement {col_max:e}",
            dephasings[k]
        );
    }
    let live = eof[0].iter().cloned().fold(0.0, f64::max);
    assert!(live > 0.08, "dephasing-free row must be entangled");
    println!(
        "criterion 07: PASS — entanglement non-increasing in dephasing over a 20×10 grid, extinguished by rate 0.8"
    );
}

#[test]
fn criterion_08_six_qubit_correlation_curves() {
    let start = Instant::now();
    let gammas = log_grid(0.05, 20.0, 30);
    let dephasings = [0.0, 0.1, 0.3];
    // Work queue over all 90 points, solved on a small thread pool.
    let tasks: Vec<(usize, usize)> = (0..dephasings.len())
        .flat_map(|k| (0..gammas.len()).map(move |i| (k, i)))
        .collect();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(vec![vec![0.0f64; gammas.len()]; dephasings.len()]);
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(4)
        .min(8);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::Relaxed);
                if t >= tasks.len() {
                    break;
                }
                let (k, i) = tasks[t];
                let report = solve(&zz_config(6, 1.0, 1.5, gammas[i], dephasings[k]));
                let pair = partial_trace(&report.state, &[1, 2]).unwrap();
                let cut = Bipartition::new(&[1], 2).unwrap();
                let mi = mutual_information(&pair, &cut).unwrap();
                results.lock().unwrap()[k][i] = mi;
            });
        }
    });
    let curves = results.into_inner().unwrap();
    let mut maxima = Vec::new();
    for (k, curve) in curves.iter().enumerate() {
        assert_single_interior_peak(&format!("six-qubit curve, dephasing {}", dephasings[k]), curve);
        maxima.push(curve.iter().cloned().fold(0.0, f64::max));
    }
    let bands = [(0.10, 0.14), (0.06, 0.085), (0.035, 0.055)];
    for (k, (&m, &(lo, hi))) in maxima.iter().zip(bands.iter()).enumerate() {
        assert!(
            m > lo && m < hi,
            "curve {k} peak {m} outside the expected band ({lo}, {hi})"
        );
    }
    assert!(
        maxima[0] > maxima[1] && maxima[1] > maxima[2],
        "peaks must decrease with dephasing: {maxima:?}"
    );
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1800.0,
        "six-qubit curves took {elapsed:?}, budget 30 min"
    );
    println!(
        "criterion 08: PASS — three six-qubit correlation curves ({} points) in {elapsed:?}, peaks {maxima:?}",
        tasks.len()
    );
}

#[test]
fn criterion_09_propagation_matches_null_space() {
    let mut rng = Rng(0x5eed_cafe_f00d_0001);
    let mut worst: f64 = 0.0;
    for trial in 0..5 {
        let n = if trial % 2 == 0 { 2 } else { 3 };
        let coupling = if trial % 3 == 0 {
            CouplingSpec::Xxyy {
                j_perp: rng.range(-2.0, 2.0),
                j_parallel: rng.range(-1.0, 1.0),
            }
        } else {
            CouplingSpec::Zz {
                j_parallel: rng.range(-2.0, 2.0),
            }
        };
        let cfg = ArrayConfig {
            n_qubits: n,
            omega_rabi: vec![rng.range(0.5, 2.0); n],
            detuning: vec![rng.range(-0.5, 0.5); n],
            gamma_decay: vec![rng.range(0.2, 1.0); n],
            gamma_dephase: vec![rng.range(0.0, 0.5); n],
            nbar: vec![rng.range(0.0, 0.5); n],
            coupling,
        };
        let lv = build_liouvillian(&cfg).unwrap();
        let direct = solve_steady_numeric(&lv).unwrap();
        let propagated = propagate_to_steady(
            &lv,
            &DensityMatrix::maximally_mixed(n),
            2000.0,
            None,
        )
        .unwrap();
        let diff = direct.state.matrix().frobenius_diff(propagated.matrix());
        worst = worst.max(diff);
        assert!(
            diff < PROPAGATION_TOL,
            "trial {trial}: propagation vs null space differ by {diff:e}"
        );
    }
    println!(
        "criterion 09: PASS — long-time propagation matches the null-space solution within {worst:.2e} on 5 randomized chains"
    );
}

#[test]
fn criterion_10_concurrence_ppt_consistency() {
    // Anchors with known values.
    let bell = bell_state();
    assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-12);
    assert!((entanglement_of_formation(&bell).unwrap() - 1.0).abs() < 1e-12);
    let cut = Bipartition::new(&[1], 2).unwrap();
    assert!((mutual_information(&bell, &cut).unwrap() - 2.0).abs() < 1e-9);
    let (violated, min_eig) = ppt_test(&bell).unwrap();
    assert!(violated);
    assert!((min_eig + 0.5).abs() < 1e-12, "Bell negativity eigenvalue");

    let mixed = DensityMatrix::maximally_mixed(2);
    assert!(concurrence(&mixed).unwrap() < 1e-15);
    assert!(!ppt_test(&mixed).unwrap().0);
    assert!(mutual_information(&mixed, &cut).unwrap().abs() < 1e-12);

    // Werner state at visibility 2.2/3: concurrence 0.6 exactly.
    let p = 2.2 / 3.0;
    let mut werner = bell.matrix().scale(num_complex::Complex64::new(p, 0.0));
    for i in 0..4 {
        werner[(i, i)] += num_complex::Complex64::new((1.0 - p) / 4.0, 0.0);
    }
    let werner = DensityMatrix::new(werner, 2).unwrap();
    let c_w = concurrence(&werner).unwrap();
    assert!((c_w - 0.6).abs() < 1e-12, "Werner concurrence {c_w}");
    let expected_eof = binary_entropy(0.9);
    assert!((entanglement_of_formation(&werner).unwrap() - expected_eof).abs() < 1e-12);

    // Randomized agreement: for two qubits, concurrence > 0 iff the partial
    // transpose goes negative. A narrow boundary band is left undecided.
    let mut rng = Rng(0xabcd_1234_5678_9abc);
    let mut entangled = 0usize;
    let mut separable = 0usize;
    let mut undecided = 0usize;
    for trial in 0..200 {
        let state = match trial % 4 {
            0 => random_state(&mut rng, 1 + trial % 3),
            1 => random_state(&mut rng, 4),
            2 => random_state(&mut rng, 3),
            _ => random_product_state(&mut rng),
        };
        let c = concurrence(&state).unwrap();
        let (violated, min_eig) = ppt_test(&state).unwrap();
        if c > 1e-8 {
            entangled += 1;
            assert!(
                violated,
                "trial {trial}: concurrence {c:e} but partial transpose stayed positive ({min_eig:e})"
            );
        } else if c < 1e-12 {
            separable += 1;
            assert!(
                !violated || min_eig > -1e-8,
                "trial {trial}: separable by concurrence but partial transpose eigenvalue {min_eig:e}"
            );
        } else {
            undecided += 1;
        }
    }
    assert!(entangled >= 30, "too few entangled samples: {entangled}");
    assert!(separable >= 30, "too few separable samples: {separable}");
    println!(
        "criterion 10: PASS — concurrence and partial-transpose verdicts agree on {entangled} entangled / {separable} separable states ({undecided} near-boundary)"
    );
}
