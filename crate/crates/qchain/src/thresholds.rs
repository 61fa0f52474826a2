//! Separability thresholds of the driven, decaying qubit pair.
//!
//! For Ising coupling with pure decay the steady state is entangled exactly
//! when Γ > Γ_th = Ω²/(2J); for exchange coupling the same expression holds
//! with J replaced by |J_⊥ − J_∥|. With pure dephasing added at γ = Γ the
//! entangled region becomes a finite window in Γ, approximated in reduced
//! units by the roots of 25s² − 20s − 316 (see
//! [`approx_combined_window`]). A bisection scanner locates boundaries of
//! either kind numerically from concurrence sign changes.

use crate::generator::{build_liouvillian, ArrayConfig, CouplingSpec};
use crate::measures::{concurrence, MeasureError};
use crate::steady::{solve_steady_numeric, SolveError};
use crate::tol;

/// Errors from threshold scans.
#[derive(Debug, thiserror::Error)]
pub enum ThresholdError {
    #[error("no concurrence sign change across the bracket ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// How a threshold estimate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdMethod {
    /// Exact closed-form expression.
    Analytic,
    /// Printed approximation to the combined-noise window.
    Approximate,
    /// Numerical bisection on the concurrence sign.
    Bisection,
}

impl std::fmt::Display for ThresholdMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ThresholdMethod::Analytic => "analytic",
            ThresholdMethod::Approximate => "approximate",
            ThresholdMethod::Bisection => "bisection",
        })
    }
}

/// Boundary (or window) of the entangled region along the decay-rate axis.
/// `lower = None` means the state is never entangled; `upper = None` means
/// the entangled region extends to arbitrarily strong decay.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdResult {
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub method: ThresholdMethod,
    /// Absolute accuracy of the reported edges (0 for exact formulas).
    pub tolerance: f64,
}

impl ThresholdResult {
    /// True when some decay strength produces entanglement.
    pub fn ever_entangled(&self) -> bool {
        self.lower.is_some()
    }
}

/// Exact Ising-coupling threshold Γ_th = Ω²/(2|J|): the pair's steady state
/// is entangled precisely for Γ above it. J = 0 never entangles.
pub fn threshold_zz(omega: f64, j: f64) -> ThresholdResult {
    assert!(omega > 0.0, "drive strength must be positive");
    let lower = if j == 0.0 {
        None
    } else {
        Some(omega * omega / (2.0 * j.abs()))
    };
    ThresholdResult {
        lower,
        upper: None,
        method: ThresholdMethod::Analytic,
        tolerance: 0.0,
    }
}

/// Exchange-coupling threshold Γ_th = Ω²/(2|J_⊥ − J_∥|): only the coupling
/// difference matters, so the isotropic point J_⊥ = J_∥ never entangles.
pub fn threshold_xxyy(omega: f64, j_perp: f64, j_par: f64) -> ThresholdResult {
    threshold_zz(omega, j_perp - j_par)
}

/// Approximate entangled window in reduced units r = Γ/Ω for equal decay
/// and dephasing rates (γ = Γ), as a function of s = J/Ω:
///
///   r_∓ = −1/32 + (5/64)·s ∓ (1/64)·√(25s² − 20s − 316),
///
/// derived from inverting s ≈ 1/(2r) + (32r + 2)/5. A negative discriminant
/// (s below ≈ 3.98) predicts no entanglement at any decay strength and
/// yields `None`.
pub fn approx_combined_window(s: f64) -> Option<(f64, f64)> {
    assert!(s > 0.0, "reduced coupling s must be positive");
    let disc = 25.0 * s * s - 20.0 * s - 316.0;
    if disc < 0.0 {
        return None;
    }
    let mid = -1.0 / 32.0 + 5.0 * s / 64.0;
    let half = disc.sqrt() / 64.0;
    Some((mid - half, mid + half))
}

fn is_entangled(config: &ArrayConfig) -> Result<bool, ThresholdError> {
    let lv = build_liouvillian(config).map_err(SolveError::from)?;
    let report = solve_steady_numeric(&lv)?;
    Ok(concurrence(&report.state)? > tol::DEAD_BAND)
}

/// Locate one boundary of the entangled region by bisection on the sign of
/// the concurrence of the numerically solved steady state. `family` maps a
/// decay rate Γ to a full configuration; the bracket ends must disagree
/// about entanglement (concurrence within ±1e-10 of zero counts as
/// separable). The located crossing is reported in `lower` regardless of
/// which direction the transition runs.
pub fn scan_threshold_bisection<F>(
    family: F,
    bracket: (f64, f64),
    tolerance: f64,
) -> Result<ThresholdResult, ThresholdError>
where
    F: Fn(f64) -> ArrayConfig,
{
    assert!(
        bracket.0 < bracket.1,
        "bracket must be ordered (lo, hi) with lo < hi"
    );
    assert!(tolerance > 0.0, "bisection tolerance must be positive");
    let (mut lo, mut hi) = bracket;
    let entangled_lo = is_entangled(&family(lo))?;
    let entangled_hi = is_entangled(&family(hi))?;
    if entangled_lo == entangled_hi {
        return Err(ThresholdError::NoSignChange { lo, hi });
    }
    // 200 halvings shrink any representable bracket to machine precision.
    for _ in 0..200 {
        if hi - lo <= tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if is_entangled(&family(mid))? == entangled_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        lower: Some(0.5 * (lo + hi)),
        upper: None,
        method: ThresholdMethod::Bisection,
        tolerance,
    })
}

/// Dephasing policy for threshold surfaces: how the pure-dephasing rate
/// follows the scanned decay rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GammaPolicy {
    /// No dephasing.
    Zero,
    /// Dephasing locked to the decay rate, γ = Γ.
    EqualToDecay,
    /// Constant dephasing rate.
    Fixed(f64),
}

impl GammaPolicy {
    fn dephasing_for(&self, gamma_decay: f64) -> f64 {
        match *self {
            GammaPolicy::Zero => 0.0,
            GammaPolicy::EqualToDecay => gamma_decay,
            GammaPolicy::Fixed(g) => g,
        }
    }
}

/// One row of a threshold surface: the entangled decay window at coupling
/// s = J/Ω.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceRow {
    pub s: f64,
    /// Lower edge of the entangled Γ window (None: never entangled).
    pub lower: Option<f64>,
    /// Upper edge (None: entangled for arbitrarily strong decay).
    pub upper: Option<f64>,
}

/// Decay range probed when mapping each row of the surface; edges beyond it
/// are reported as open.
const SURFACE_PROBE_LO: f64 = 1e-3;
const SURFACE_PROBE_HI: f64 = 100.0;
const SURFACE_PROBE_COUNT: usize = 60;

/// Map the entangled window of a driven, Ising-coupled qubit pair for every
/// coupling on the grid. For each s, a 60-point log-spaced probe of
/// Γ/Ω ∈ [1e-3, 100] locates the entangled region and bisection refines
/// its edges to the absolute width `tolerance`; the reported edges are
/// decay rates Γ in the same units as Ω. The upper-edge bisection brackets
/// from the last entangled probe point to 100·Ω; rows entangled at the
/// final probe point report an open upper edge.
pub fn threshold_surface(
    omega: f64,
    s_grid: &[f64],
    policy: GammaPolicy,
    tolerance: f64,
) -> Result<Vec<SurfaceRow>, ThresholdError> {
    assert!(omega > 0.0, "drive strength must be positive");
    s_grid
        .iter()
        .map(|&s| surface_row(omega, s, policy, tolerance))
        .collect()
}

fn surface_row(
    omega: f64,
    s: f64,
    policy: GammaPolicy,
    tolerance: f64,
) -> Result<SurfaceRow, ThresholdError> {
    let family = move |gamma_decay: f64| {
        ArrayConfig::homogeneous(
            2,
            omega,
            gamma_decay,
            policy.dephasing_for(gamma_decay),
            CouplingSpec::Zz {
                j_parallel: s * omega,
            },
        )
    };
    let lo = SURFACE_PROBE_LO * omega;
    let hi = SURFACE_PROBE_HI * omega;
    let ratio = (hi / lo).powf(1.0 / (SURFACE_PROBE_COUNT as f64 - 1.0));
    let probes: Vec<f64> = (0..SURFACE_PROBE_COUNT)
        .map(|i| lo * ratio.powi(i as i32))
        .collect();
    let mut flags = Vec::with_capacity(probes.len());
    for &g in &probes {
        flags.push(is_entangled(&family(g))?);
    }
    let Some(first) = flags.iter().position(|&e| e) else {
        return Ok(SurfaceRow {
            s,
            lower: None,
            upper: None,
        });
    };
    let last = flags.iter().rposition(|&e| e).expect("first exists");

    let lower = if first == 0 {
        // Entangled already at the probe floor: push the bracket down two
        // decades; if still entangled there, report the extended floor.
        let floor = lo * 1e-2;
        if is_entangled(&family(floor))? {
            Some(floor)
        } else {
            scan_threshold_bisection(family, (floor, probes[0]), tolerance)?.lower
        }
    } else {
        scan_threshold_bisection(family, (probes[first - 1], probes[first]), tolerance)?.lower
    };

    let upper = if last == probes.len() - 1 {
        None
    } else {
        scan_threshold_bisection(family, (probes[last], hi), tolerance)?.lower
    };

    Ok(SurfaceRow { s, lower, upper })
}
