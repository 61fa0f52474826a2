//! Canned datasets behind the `figure` subcommand: fixed parameter families
//! that exercise the spectrum, entanglement windows, threshold surfaces,
//! dephasing families, and the six-qubit correlation curves.

use qchain::{threshold_surface, ArrayConfig, CouplingSpec, GammaPolicy};

use crate::config::{GridSpec, Spacing};
use crate::error::CliError;
use crate::output::Row;
use crate::sweep::{run_sweep, Axis, MeasureKind, MeasureSettings, SweepContext};

/// Dataset names accepted by `qchain figure`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureName {
    /// Steady-spectrum and entanglement-of-formation curves vs decay (two
    /// qubits, zz coupling J = 1.5 Ω).
    Fig2,
    /// Entanglement of formation vs decay for xxyy anisotropies d = J⊥ − J∥.
    Fig3,
    /// Entangled decay windows vs coupling ratio s, dephasing-free and γ = Γ.
    Fig4,
    /// Entanglement of formation vs decay for dephasing rates 0.0 … 0.9.
    Fig6,
    /// Nearest-neighbour mutual information vs decay for a six-qubit chain.
    Fig7,
}

impl FigureName {
    pub fn as_str(&self) -> &'static str {
        match self {
            FigureName::Fig2 => "fig2",
            FigureName::Fig3 => "fig3",
            FigureName::Fig4 => "fig4",
            FigureName::Fig6 => "fig6",
            FigureName::Fig7 => "fig7",
        }
    }
}

/// Log-spaced decay grid shared by the figure families.
fn decay_grid(start: f64, stop: f64, count: usize) -> Result<Vec<f64>, CliError> {
    GridSpec::Range {
        start,
        stop,
        count,
        spacing: Some(Spacing::Log),
    }
    .build(Spacing::Log)
}

fn two_qubit_zz(dephasing: f64) -> ArrayConfig {
    ArrayConfig::homogeneous(2, 1.0, 1.0, dephasing, CouplingSpec::Zz { j_parallel: 1.5 })
}

/// Spectrum and entanglement of formation against decay, J = 1.5 Ω.
pub fn fig2(jobs: Option<usize>) -> Result<Vec<Row>, CliError> {
    let ctx = SweepContext {
        base: two_qubit_zz(0.0),
        axis: Axis::Gamma,
        grid: decay_grid(0.01, 20.0, 100)?,
        measures: vec![MeasureKind::Eigenvalues, MeasureKind::Eof],
        settings: MeasureSettings::default(),
        suffix: String::new(),
    };
    run_sweep(&ctx, jobs)
}

/// Entanglement of formation against decay for xx+yy couplings with
/// anisotropy d = J⊥ − J∥ (one curve per d; d = 0 is the separable case).
pub fn fig3(jobs: Option<usize>) -> Result<Vec<Row>, CliError> {
    let grid = decay_grid(0.01, 20.0, 60)?;
    let mut rows = Vec::new();
    for &d in &[0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0] {
        let ctx = SweepContext {
            base: ArrayConfig::homogeneous(
                2,
                1.0,
                1.0,
                0.0,
                CouplingSpec::Xxyy {
                    j_perp: d,
                    j_parallel: 0.0,
                },
            ),
            axis: Axis::Gamma,
            grid: grid.clone(),
            measures: vec![MeasureKind::Eof],
            settings: MeasureSettings::default(),
            suffix: format!("[d={d}]"),
        };
        rows.extend(run_sweep(&ctx, jobs)?);
    }
    Ok(rows)
}

/// Entangled decay windows against the coupling ratio s = J/Ω for the
/// dephasing-free and γ = Γ policies. Absent edges are omitted rather than
/// emitted as sentinels; `entangled` rows mark whether a window exists.
pub fn fig4(tolerance: f64) -> Result<Vec<Row>, CliError> {
    let s_grid: Vec<f64> = (0..31).map(|i| 0.5 + 0.25 * i as f64).collect();
    let mut rows = Vec::new();
    for (policy, label) in [
        (GammaPolicy::Zero, "zero"),
        (GammaPolicy::EqualToDecay, "equal"),
    ] {
        let surface = threshold_surface(1.0, &s_grid, policy, tolerance)?;
        for point in &surface {
            rows.push(Row {
                axis: point.s,
                measure: format!("entangled[dephasing={label}]"),
                value: if point.lower.is_some() { 1.0 } else { 0.0 },
            });
            if let Some(lower) = point.lower {
                rows.push(Row {
                    axis: point.s,
                    measure: format!("gamma_lower[dephasing={label}]"),
                    value: lower,
                });
            }
            if let Some(upper) = point.upper {
                rows.push(Row {
                    axis: point.s,
                    measure: format!("gamma_upper[dephasing={label}]"),
                    value: upper,
                });
            }
        }
    }
    Ok(rows)
}

/// Entanglement of formation against decay for pure-dephasing rates
/// 0.0, 0.1, …, 0.9 (zz coupling, J = 1.5 Ω).
pub fn fig6(jobs: Option<usize>) -> Result<Vec<Row>, CliError> {
    let grid = decay_grid(0.05, 20.0, 20)?;
    let mut rows = Vec::new();
    for i in 0..10 {
        let dephasing = 0.1 * i as f64;
        let ctx = SweepContext {
            base: two_qubit_zz(dephasing),
            axis: Axis::Gamma,
            grid: grid.clone(),
            measures: vec![MeasureKind::Eof],
            settings: MeasureSettings::default(),
            suffix: format!("[dephasing={dephasing:.1}]"),
        };
        rows.extend(run_sweep(&ctx, jobs)?);
    }
    Ok(rows)
}

/// Mutual information of the first nearest-neighbour pair against decay for
/// a six-qubit zz chain at dephasing rates 0, 0.1, and 0.3.
pub fn fig7(jobs: Option<usize>) -> Result<Vec<Row>, CliError> {
    let grid = decay_grid(0.05, 20.0, 30)?;
    let mut rows = Vec::new();
    for &dephasing in &[0.0, 0.1, 0.3] {
        let ctx = SweepContext {
            base: ArrayConfig::homogeneous(
                6,
                1.0,
                1.0,
                dephasing,
                CouplingSpec::Zz { j_parallel: 1.5 },
            ),
            axis: Axis::Gamma,
            grid: grid.clone(),
            measures: vec![MeasureKind::PairMutualInformation],
            settings: MeasureSettings {
                pair: (1, 2),
                ..MeasureSettings::default()
            },
            suffix: format!("[dephasing={dephasing}]"),
        };
        rows.extend(run_sweep(&ctx, jobs)?);
    }
    Ok(rows)
}

/// Produce the rows of one named dataset. `tolerance` only affects the
/// bisections behind fig4.
pub fn run_figure(
    name: FigureName,
    jobs: Option<usize>,
    tolerance: f64,
) -> Result<Vec<Row>, CliError> {
    match name {
        FigureName::Fig2 => fig2(jobs),
        FigureName::Fig3 => fig3(jobs),
        FigureName::Fig4 => fig4(tolerance),
        FigureName::Fig6 => fig6(jobs),
        FigureName::Fig7 => fig7(jobs),
    }
}
