//! `qchain`: steady states, entanglement measures, and decay thresholds of
//! driven dissipative qubit chains.
//!
//! Exit codes: 0 success, 1 input error (bad flags, unreadable or invalid
//! configuration), 2 solver failure (no convergence, non-unique steady
//! state).

mod config;
mod error;
mod figures;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use qchain::{build_liouvillian, validate_regime, ArrayConfig, CouplingSpec, GammaPolicy};

use crate::config::{load, FileConfig, GridSpec, Spacing};
use crate::error::CliError;
use crate::figures::{run_figure, FigureName};
use crate::output::{emit, Emission, Format, Row};
use crate::sweep::{
    default_measures, run_sweep, solve_single, validate_measures, Axis, MeasureKind,
    MeasureSettings, SweepContext,
};

#[derive(Parser)]
#[command(
    name = "qchain",
    version,
    about = "Steady states, entanglement measures, and decay thresholds of driven dissipative qubit chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the steady state of one configuration and print its measures.
    Steady(RunArgs),
    /// Sweep the parameter axis defined in the config's [sweep] section.
    Sweep(RunArgs),
    /// Map the entangled decay window over coupling ratios s = J/Ω.
    Threshold(RunArgs),
    /// Emit a canned figure dataset.
    Figure(FigureArgs),
    /// Check a configuration file and report modelling-regime warnings.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Configuration file (TOML; a `.json` extension selects JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Bisection tolerance for threshold edges (absolute, decay-rate units).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct FigureArgs {
    /// Dataset to produce.
    #[arg(value_enum)]
    name: FigureName,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Bisection tolerance for threshold edges (fig4 only; absolute units).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Configuration file (TOML; a `.json` extension selects JSON).
    #[arg(long)]
    config: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qchain: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Steady(args) => cmd_steady(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Threshold(args) => cmd_threshold(&args),
        Command::Figure(args) => cmd_figure(&args),
        Command::Validate(args) => cmd_validate(&args),
    }
}

fn fmt_vec(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_coupling(c: &CouplingSpec) -> String {
    match c {
        CouplingSpec::Zz { j_parallel } => format!("zz(j={j_parallel})"),
        CouplingSpec::Xxyy { j_perp, j_parallel } => {
            format!("xxyy(j_perp={j_perp},j_par={j_parallel})")
        }
        CouplingSpec::Xyz { j_x, j_y, j_z } => format!("xyz(jx={j_x},jy={j_y},jz={j_z})"),
    }
}

fn fmt_policy(policy: GammaPolicy) -> String {
    match policy {
        GammaPolicy::Zero => "zero".into(),
        GammaPolicy::EqualToDecay => "equal".into(),
        GammaPolicy::Fixed(g) => format!("fixed({g})"),
    }
}

fn fmt_jobs(jobs: Option<usize>) -> String {
    jobs.map_or_else(|| "auto".into(), |j| j.to_string())
}

/// Shared metadata header. Only `timestamp_unix` varies between identical
/// runs; everything below it is deterministic.
fn base_metadata(command: &str) -> Vec<(String, String)> {
    let ts = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    vec![
        ("tool".into(), "qchain".into()),
        ("version".into(), env!("CARGO_PKG_VERSION").into()),
        ("command".into(), command.into()),
        ("timestamp_unix".into(), ts.to_string()),
    ]
}

fn config_metadata(meta: &mut Vec<(String, String)>, cfg: &ArrayConfig) {
    meta.push(("n_qubits".into(), cfg.n_qubits.to_string()));
    meta.push(("omega".into(), fmt_vec(&cfg.omega_rabi)));
    meta.push(("coupling".into(), fmt_coupling(&cfg.coupling)));
    meta.push(("gamma".into(), fmt_vec(&cfg.gamma_decay)));
    meta.push(("dephasing".into(), fmt_vec(&cfg.gamma_dephase)));
    meta.push(("nbar".into(), fmt_vec(&cfg.nbar)));
    meta.push(("detuning".into(), fmt_vec(&cfg.detuning)));
}

/// Measure list and site/cut settings: the optional [sweep] section narrows
/// the defaults for the chain size.
fn resolve_measures(
    file: &FileConfig,
    n_qubits: usize,
) -> Result<(Vec<MeasureKind>, MeasureSettings), CliError> {
    let mut settings = MeasureSettings::default();
    let mut kinds = None;
    if let Some(sw) = &file.sweep {
        if let Some(cut) = &sw.cut {
            settings.cut = cut.clone();
        }
        if let Some(site) = sw.site {
            settings.site = site;
        }
        if let Some(pair) = sw.pair {
            settings.pair = pair;
        }
        if !sw.measures.is_empty() {
            kinds = Some(
                sw.measures
                    .iter()
                    .map(|m| MeasureKind::parse(m))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
    }
    Ok((kinds.unwrap_or_else(|| default_measures(n_qubits)), settings))
}

fn cmd_steady(args: &RunArgs) -> Result<(), CliError> {
    let file = load(&args.config)?;
    let cfg = file.array.to_array_config()?;
    let (kinds, settings) = resolve_measures(&file, cfg.n_qubits)?;
    // The axis column carries the configured decay rate of site 1.
    let axis_value = cfg.gamma_decay[0];
    let (rows, report) = solve_single(&cfg, &kinds, &settings, axis_value)?;
    let mut meta = base_metadata("steady");
    config_metadata(&mut meta, &cfg);
    meta.push(("axis".into(), "gamma".into()));
    meta.push(("solver".into(), report.method.to_string()));
    meta.push(("residual".into(), format!("{:e}", report.residual)));
    meta.push(("null_space_dim".into(), report.null_space_dim.to_string()));
    emit(
        &Emission {
            metadata: meta,
            rows,
        },
        args.format,
        args.out.as_deref(),
    )
}

fn cmd_sweep(args: &RunArgs) -> Result<(), CliError> {
    let file = load(&args.config)?;
    let cfg = file.array.to_array_config()?;
    let sw = file
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::input("the sweep command needs a [sweep] section"))?;
    let axis = Axis::parse(&sw.axis)?;
    let grid = sw.grid.build(axis.default_spacing())?;
    let (kinds, settings) = resolve_measures(&file, cfg.n_qubits)?;
    let solver = if build_liouvillian(&cfg)?.is_sparse() {
        "sparse-linear-solve"
    } else {
        "dense-nullspace"
    };
    let ctx = SweepContext {
        base: cfg.clone(),
        axis,
        grid,
        measures: kinds,
        settings,
        suffix: String::new(),
    };
    let rows = run_sweep(&ctx, args.jobs)?;
    let mut meta = base_metadata("sweep");
    config_metadata(&mut meta, &cfg);
    meta.push(("axis".into(), axis.name().into()));
    meta.push(("points".into(), ctx.grid.len().to_string()));
    meta.push(("jobs".into(), fmt_jobs(args.jobs)));
    meta.push(("solver".into(), solver.into()));
    emit(
        &Emission {
            metadata: meta,
            rows,
        },
        args.format,
        args.out.as_deref(),
    )
}

fn cmd_threshold(args: &RunArgs) -> Result<(), CliError> {
    let file = load(&args.config)?;
    let cfg = file.array.to_array_config()?;
    let omega = file.array.homogeneous_omega()?;
    if omega <= 0.0 {
        return Err(CliError::input("threshold scans need array.omega > 0"));
    }
    let s_default = match cfg.coupling {
        CouplingSpec::Zz { j_parallel } => j_parallel / omega,
        CouplingSpec::Xxyy { j_perp, j_parallel } => (j_perp - j_parallel) / omega,
        CouplingSpec::Xyz { .. } => {
            return Err(CliError::input(
                "threshold scans support zz and xxyy couplings",
            ))
        }
    };
    let fallback_dephasing = cfg.gamma_dephase[0];
    let (s_grid, policy) = match &file.threshold {
        Some(th) => {
            let grid = match &th.s_grid {
                // A single explicit ratio is allowed here even though sweep
                // grids require two points.
                Some(GridSpec::Explicit(v)) if v.len() == 1 && v[0].is_finite() => v.clone(),
                Some(g) => g.build(Spacing::Linear)?,
                None => vec![s_default],
            };
            (grid, th.gamma_policy(fallback_dephasing)?)
        }
        None => (vec![s_default], config::default_policy(fallback_dephasing)),
    };
    let tolerance = args.tol.unwrap_or(qchain::tol::BISECTION_DEFAULT_TOL);
    if !(tolerance > 0.0) {
        return Err(CliError::input("--tol must be positive"));
    }
    let surface = qchain::threshold_surface(omega, &s_grid, policy, tolerance)?;
    let mut rows = Vec::new();
    for point in &surface {
        rows.push(Row {
            axis: point.s,
            measure: "entangled".into(),
            value: if point.lower.is_some() { 1.0 } else { 0.0 },
        });
        if let Some(lower) = point.lower {
            rows.push(Row {
                axis: point.s,
                measure: "gamma_lower".into(),
                value: lower,
            });
        }
        if let Some(upper) = point.upper {
            rows.push(Row {
                axis: point.s,
                measure: "gamma_upper".into(),
                value: upper,
            });
        }
    }
    let mut meta = base_metadata("threshold");
    config_metadata(&mut meta, &cfg);
    meta.push(("axis".into(), "s".into()));
    meta.push(("policy".into(), fmt_policy(policy)));
    meta.push(("tolerance".into(), tolerance.to_string()));
    emit(
        &Emission {
            metadata: meta,
            rows,
        },
        args.format,
        args.out.as_deref(),
    )
}

fn cmd_figure(args: &FigureArgs) -> Result<(), CliError> {
    let tolerance = args.tol.unwrap_or(qchain::tol::BISECTION_DEFAULT_TOL);
    if !(tolerance > 0.0) {
        return Err(CliError::input("--tol must be positive"));
    }
    let rows = run_figure(args.name, args.jobs, tolerance)?;
    let mut meta = base_metadata("figure");
    meta.push(("figure".into(), args.name.as_str().into()));
    let axis_name = match args.name {
        FigureName::Fig4 => "s",
        _ => "gamma",
    };
    meta.push(("axis".into(), axis_name.into()));
    meta.push(("jobs".into(), fmt_jobs(args.jobs)));
    emit(
        &Emission {
            metadata: meta,
            rows,
        },
        args.format,
        args.out.as_deref(),
    )
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), CliError> {
    let file = load(&args.config)?;
    let cfg = file.array.to_array_config()?;
    let dim = cfg.hilbert_dim();
    println!(
        "configuration ok: {} qubit(s), Hilbert dimension {dim}, superoperator dimension {}",
        cfg.n_qubits,
        dim * dim
    );
    println!("coupling: {}", fmt_coupling(&cfg.coupling));
    println!("total jump rate: {}", cfg.total_jump_rate());
    if cfg.is_noiseless() {
        println!("note: every rate vanishes, so no unique steady state exists");
    }
    match file.array.omega0 {
        Some(omega0) => {
            if omega0 <= 0.0 {
                return Err(CliError::input("array.omega0 must be positive"));
            }
            let warnings = validate_regime(&cfg, omega0);
            if warnings.is_empty() {
                println!("regime check passed (omega0 = {omega0})");
            } else {
                for w in &warnings {
                    println!("warning: {w}");
                }
            }
        }
        None => println!("regime check skipped (array.omega0 not set)"),
    }
    if let Some(sw) = &file.sweep {
        let axis = Axis::parse(&sw.axis)?;
        let grid = sw.grid.build(axis.default_spacing())?;
        let (kinds, settings) = resolve_measures(&file, cfg.n_qubits)?;
        validate_measures(&kinds, &settings, cfg.n_qubits)?;
        let mut probe = cfg.clone();
        axis.apply(&mut probe, grid[0])?;
        println!(
            "sweep: axis {} over {} points, {} measure(s)",
            axis.name(),
            grid.len(),
            kinds.len()
        );
    }
    if let Some(th) = &file.threshold {
        let policy = th.gamma_policy(cfg.gamma_dephase[0])?;
        let n_ratios = match &th.s_grid {
            Some(GridSpec::Explicit(v)) if v.len() == 1 => 1,
            Some(g) => g.build(Spacing::Linear)?.len(),
            None => 1,
        };
        println!(
            "threshold: policy {} over {n_ratios} coupling ratio(s)",
            fmt_policy(policy)
        );
    }
    Ok(())
}
