//! Parameter-sweep engine: map a grid of axis values onto configurations,
//! solve each steady state (in parallel), and evaluate measures as flat
//! (axis, measure, value) rows.

use rayon::prelude::*;

use qchain::opalg::{hermitian_eigensystem, partial_trace};
use qchain::{
    build_liouvillian, concurrence, entanglement_of_formation, localization_probabilities,
    mutual_information, ppt_test, solve_steady_numeric, ArrayConfig, Bipartition, CouplingSpec,
    SteadyStateReport,
};

use crate::config::Spacing;
use crate::error::CliError;
use crate::output::Row;

/// Swept parameter. Decay defaults to log-spaced grids; everything else to
/// linear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Gamma,
    Dephasing,
    J,
    JPerp,
    JPar,
    Detuning,
}

impl Axis {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "gamma" => Ok(Axis::Gamma),
            "dephasing" => Ok(Axis::Dephasing),
            "j" => Ok(Axis::J),
            "j_perp" => Ok(Axis::JPerp),
            "j_par" => Ok(Axis::JPar),
            "detuning" => Ok(Axis::Detuning),
            other => Err(CliError::input(format!(
                "unknown sweep.axis `{other}` (expected gamma, dephasing, j, j_perp, j_par, or detuning)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Axis::Gamma => "gamma",
            Axis::Dephasing => "dephasing",
            Axis::J => "j",
            Axis::JPerp => "j_perp",
            Axis::JPar => "j_par",
            Axis::Detuning => "detuning",
        }
    }

    pub fn default_spacing(&self) -> Spacing {
        match self {
            Axis::Gamma => Spacing::Log,
            _ => Spacing::Linear,
        }
    }

    pub(crate) fn apply(&self, cfg: &mut ArrayConfig, value: f64) -> Result<(), CliError> {
        let n = cfg.n_qubits;
        match self {
            Axis::Gamma => cfg.gamma_decay = vec![value; n],
            Axis::Dephasing => cfg.gamma_dephase = vec![value; n],
            Axis::Detuning => cfg.detuning = vec![value; n],
            Axis::J => match &mut cfg.coupling {
                CouplingSpec::Zz { j_parallel } => *j_parallel = value,
                _ => {
                    return Err(CliError::input(
                        "axis `j` requires zz coupling; use j_perp or j_par for xxyy",
                    ))
                }
            },
            Axis::JPerp => match &mut cfg.coupling {
                CouplingSpec::Xxyy { j_perp, .. } => *j_perp = value,
                _ => return Err(CliError::input("axis `j_perp` requires xxyy coupling")),
            },
            Axis::JPar => match &mut cfg.coupling {
                CouplingSpec::Xxyy { j_parallel, .. } => *j_parallel = value,
                _ => return Err(CliError::input("axis `j_par` requires xxyy coupling")),
            },
        }
        Ok(())
    }
}

/// A measure evaluated per grid point. Some produce several rows
/// (`eigenvalues`); the rest one row each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    /// Entanglement of formation (two qubits).
    Eof,
    /// Wootters concurrence (two qubits).
    Concurrence,
    /// Minimum partial-transpose eigenvalue (two qubits).
    Negativity,
    /// Mutual information across the configured cut.
    MutualInformation,
    /// Mutual information inside the reduced state of the configured pair.
    PairMutualInformation,
    /// Full steady-state spectrum, ascending.
    Eigenvalues,
    /// Localization probability p_z of the configured site.
    PZ,
    /// Delocalization probability p_x of the configured site.
    PX,
    /// Steady-state residual ‖L·vec(ρ)‖₂.
    Residual,
}

impl MeasureKind {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "eof" => Ok(MeasureKind::Eof),
            "concurrence" => Ok(MeasureKind::Concurrence),
            "negativity" => Ok(MeasureKind::Negativity),
            "mutual_information" => Ok(MeasureKind::MutualInformation),
            "mutual_information_pair" => Ok(MeasureKind::PairMutualInformation),
            "eigenvalues" => Ok(MeasureKind::Eigenvalues),
            "p_z" => Ok(MeasureKind::PZ),
            "p_x" => Ok(MeasureKind::PX),
            "residual" => Ok(MeasureKind::Residual),
            other => Err(CliError::input(format!(
                "unknown measure `{other}` (expected eof, concurrence, negativity, \
                 mutual_information, mutual_information_pair, eigenvalues, p_z, p_x, or residual)"
            ))),
        }
    }
}

/// Site and cut choices shared by all measures of one run.
#[derive(Clone, Debug)]
pub struct MeasureSettings {
    /// Part A of the mutual-information bipartition (1-based sites).
    pub cut: Vec<usize>,
    /// Site for p_z / p_x.
    pub site: usize,
    /// Pair for `mutual_information_pair`.
    pub pair: (usize, usize),
}

impl Default for MeasureSettings {
    fn default() -> Self {
        Self {
            cut: vec![1],
            site: 1,
            pair: (1, 2),
        }
    }
}

/// Measures that make sense for an N-qubit chain: the two-qubit
/// entanglement set when N = 2, correlation and localization measures
/// otherwise.
pub fn default_measures(n_qubits: usize) -> Vec<MeasureKind> {
    match n_qubits {
        1 => vec![
            MeasureKind::PZ,
            MeasureKind::PX,
            MeasureKind::Eigenvalues,
            MeasureKind::Residual,
        ],
        2 => vec![
            MeasureKind::Eof,
            MeasureKind::Concurrence,
            MeasureKind::Negativity,
            MeasureKind::MutualInformation,
            MeasureKind::PZ,
            MeasureKind::PX,
            MeasureKind::Eigenvalues,
            MeasureKind::Residual,
        ],
        _ => vec![
            MeasureKind::MutualInformation,
            MeasureKind::PZ,
            MeasureKind::PX,
            MeasureKind::Eigenvalues,
            MeasureKind::Residual,
        ],
    }
}

/// Everything needed to run one sweep. `suffix` is appended to every
/// measure name (for multi-curve figure families, e.g. `[d=1.5]`).
#[derive(Clone, Debug)]
pub struct SweepContext {
    pub base: ArrayConfig,
    pub axis: Axis,
    pub grid: Vec<f64>,
    pub measures: Vec<MeasureKind>,
    pub settings: MeasureSettings,
    pub suffix: String,
}

/// Reject configurations whose measures cannot be evaluated before any
/// solving starts.
pub fn validate_measures(
    kinds: &[MeasureKind],
    settings: &MeasureSettings,
    n_qubits: usize,
) -> Result<(), CliError> {
    if kinds.is_empty() {
        return Err(CliError::input("at least one measure is required"));
    }
    for kind in kinds {
        match kind {
            MeasureKind::Eof | MeasureKind::Concurrence | MeasureKind::Negativity => {
                if n_qubits != 2 {
                    return Err(CliError::input(format!(
                        "measure {kind:?} requires exactly 2 qubits, config has {n_qubits}"
                    )));
                }
            }
            MeasureKind::MutualInformation => {
                Bipartition::new(&settings.cut, n_qubits)?;
            }
            MeasureKind::PairMutualInformation => {
                let (a, b) = settings.pair;
                if a == 0 || b == 0 || a >= b || b > n_qubits {
                    return Err(CliError::input(format!(
                        "pair ({a}, {b}) is not an ordered pair of distinct sites in 1..={n_qubits}"
                    )));
                }
            }
            MeasureKind::PZ | MeasureKind::PX => {
                if settings.site == 0 || settings.site > n_qubits {
                    return Err(CliError::input(format!(
                        "site {} out of range for {n_qubits} qubits",
                        settings.site
                    )));
                }
            }
            MeasureKind::Eigenvalues | MeasureKind::Residual => {}
        }
    }
    Ok(())
}

/// Evaluate all measures of a solved steady state as output rows.
pub fn eval_rows(
    report: &SteadyStateReport,
    kinds: &[MeasureKind],
    settings: &MeasureSettings,
    axis_value: f64,
    suffix: &str,
) -> Result<Vec<Row>, CliError> {
    let state = &report.state;
    let mut rows = Vec::new();
    let mut push = |name: String, value: f64| {
        rows.push(Row {
            axis: axis_value,
            measure: format!("{name}{suffix}"),
            value,
        });
    };
    for kind in kinds {
        match kind {
            MeasureKind::Eof => push("eof".into(), entanglement_of_formation(state)?),
            MeasureKind::Concurrence => push("concurrence".into(), concurrence(state)?),
            MeasureKind::Negativity => {
                let (_, min_eig) = ppt_test(state)?;
                push("negativity".into(), min_eig);
            }
            MeasureKind::MutualInformation => {
                let cut = Bipartition::new(&settings.cut, state.n_qubits())?;
                push("mutual_information".into(), mutual_information(state, &cut)?);
            }
            MeasureKind::PairMutualInformation => {
                let (a, b) = settings.pair;
                let reduced = partial_trace(state, &[a, b]).map_err(qchain::MeasureError::from)?;
                let cut = Bipartition::new(&[1], 2)?;
                push(
                    format!("mutual_information_{a}{b}"),
                    mutual_information(&reduced, &cut)?,
                );
            }
            MeasureKind::Eigenvalues => {
                let es = hermitian_eigensystem(state.matrix())
                    .map_err(|e| CliError::Solver(e.to_string()))?;
                for (i, l) in es.eigenvalues.iter().enumerate() {
                    push(format!("eigenvalue_{}", i + 1), *l);
                }
            }
            MeasureKind::PZ => {
                let loc = localization_probabilities(state, settings.site)?;
                push("p_z".into(), loc.p_z);
            }
            MeasureKind::PX => {
                let loc = localization_probabilities(state, settings.site)?;
                push("p_x".into(), loc.p_x);
            }
            MeasureKind::Residual => push("residual".into(), report.residual),
        }
    }
    Ok(rows)
}

fn point_rows(ctx: &SweepContext, value: f64) -> Result<Vec<Row>, CliError> {
    let mut cfg = ctx.base.clone();
    ctx.axis.apply(&mut cfg, value)?;
    let lv = build_liouvillian(&cfg)?;
    match solve_steady_numeric(&lv) {
        Ok(report) => eval_rows(&report, &ctx.measures, &ctx.settings, value, &ctx.suffix),
        // Isolated non-convergence degrades to a flagged row so long sweeps
        // survive; the flag replaces every measure of the point.
        Err(_) => Ok(vec![Row {
            axis: value,
            measure: format!("solver_failure{}", ctx.suffix),
            value: 1.0,
        }]),
    }
}

/// Run a sweep with `jobs` worker threads (`None`: machine parallelism).
/// Row order is deterministic: grid order, then measure order.
pub fn run_sweep(ctx: &SweepContext, jobs: Option<usize>) -> Result<Vec<Row>, CliError> {
    validate_measures(&ctx.measures, &ctx.settings, ctx.base.n_qubits)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::input(format!("cannot build worker pool: {e}")))?;
    let nested: Result<Vec<Vec<Row>>, CliError> = pool.install(|| {
        ctx.grid
            .par_iter()
            .map(|&value| point_rows(ctx, value))
            .collect()
    });
    Ok(nested?.into_iter().flatten().collect())
}

/// Solve one configuration and evaluate measures at a fixed axis value
/// (used by the `steady` subcommand). Solver failures are hard errors here.
pub fn solve_single(
    cfg: &ArrayConfig,
    kinds: &[MeasureKind],
    settings: &MeasureSettings,
    axis_value: f64,
) -> Result<(Vec<Row>, SteadyStateReport), CliError> {
    validate_measures(kinds, settings, cfg.n_qubits)?;
    let lv = build_liouvillian(cfg)?;
    let report = solve_steady_numeric(&lv)?;
    let rows = eval_rows(&report, kinds, settings, axis_value, "")?;
    Ok((rows, report))
}
