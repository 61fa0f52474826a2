//! Configuration file schema and parsing (TOML primary, JSON by file
//! extension).
//!
//! ```toml
//! [array]
//! n_qubits = 2
//! omega = 1.0            # scalar or one value per site
//! gamma = 1.0            # decay rate Γ (default 0)
//! dephasing = 0.0        # pure-dephasing rate γ (default 0)
//! detuning = 0.0         # drive detuning δ (default 0)
//! nbar = 0.0             # thermal occupation (default 0)
//! omega0 = 100.0         # qubit frequency, only for regime validation
//!
//! [array.coupling]
//! kind = "zz"            # zz | xxyy | xyz
//! j = 1.5                # zz;  xxyy takes j_perp/j_par;  xyz takes jx/jy/jz
//!
//! [sweep]                # used by `sweep` (and measure selection in `steady`)
//! axis = "gamma"         # gamma | dephasing | j | j_perp | j_par | detuning
//! grid = { start = 0.01, stop = 10.0, count = 200, spacing = "log" }
//! measures = ["eof", "eigenvalues"]
//! cut = [1]              # part A of the mutual-information bipartition
//! site = 1               # site for p_z / p_x
//! pair = [1, 2]          # pair for mutual_information_pair
//!
//! [threshold]            # used by `threshold`
//! s_grid = [0.5, 1.0, 1.5, 2.0, 4.0]
//! policy = "zero"        # zero | equal | fixed
//! fixed_dephasing = 0.3  # with policy = "fixed"
//! ```

use std::path::Path;

use serde::Deserialize;

use qchain::{ArrayConfig, CouplingSpec, GammaPolicy};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub array: ArraySection,
    #[serde(default)]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub threshold: Option<ThresholdSection>,
}

/// A per-site quantity given either as one shared scalar or one value per
/// site.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarOrVec {
    Scalar(f64),
    PerSite(Vec<f64>),
}

impl ScalarOrVec {
    fn expand(&self, n: usize, field: &str) -> Result<Vec<f64>, CliError> {
        match self {
            ScalarOrVec::Scalar(v) => Ok(vec![*v; n]),
            ScalarOrVec::PerSite(values) if values.len() == n => Ok(values.clone()),
            ScalarOrVec::PerSite(values) => Err(CliError::input(format!(
                "array.{field} has {} entries, expected {n}",
                values.len()
            ))),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySection {
    pub n_qubits: usize,
    pub omega: ScalarOrVec,
    #[serde(default)]
    pub detuning: Option<ScalarOrVec>,
    #[serde(default)]
    pub gamma: Option<ScalarOrVec>,
    #[serde(default)]
    pub dephasing: Option<ScalarOrVec>,
    #[serde(default)]
    pub nbar: Option<ScalarOrVec>,
    /// Qubit frequency for regime validation only; the rotating-frame model
    /// itself never needs it.
    #[serde(default)]
    pub omega0: Option<f64>,
    pub coupling: CouplingSection,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum CouplingSection {
    #[serde(rename = "zz", alias = "ZZ")]
    Zz { j: f64 },
    #[serde(rename = "xxyy", alias = "XXYY")]
    Xxyy { j_perp: f64, j_par: f64 },
    #[serde(rename = "xyz", alias = "XYZ")]
    Xyz { jx: f64, jy: f64, jz: f64 },
}

impl ArraySection {
    pub fn to_array_config(&self) -> Result<ArrayConfig, CliError> {
        let n = self.n_qubits;
        if n == 0 {
            return Err(CliError::input("array.n_qubits must be at least 1"));
        }
        let zero = ScalarOrVec::Scalar(0.0);
        let coupling = match self.coupling {
            CouplingSection::Zz { j } => CouplingSpec::Zz { j_parallel: j },
            CouplingSection::Xxyy { j_perp, j_par } => CouplingSpec::Xxyy {
                j_perp,
                j_parallel: j_par,
            },
            CouplingSection::Xyz { jx, jy, jz } => CouplingSpec::Xyz {
                j_x: jx,
                j_y: jy,
                j_z: jz,
            },
        };
        let config = ArrayConfig {
            n_qubits: n,
            omega_rabi: self.omega.expand(n, "omega")?,
            detuning: self.detuning.as_ref().unwrap_or(&zero).expand(n, "detuning")?,
            gamma_decay: self.gamma.as_ref().unwrap_or(&zero).expand(n, "gamma")?,
            gamma_dephase: self
                .dephasing
                .as_ref()
                .unwrap_or(&zero)
                .expand(n, "dephasing")?,
            nbar: self.nbar.as_ref().unwrap_or(&zero).expand(n, "nbar")?,
            coupling,
        };
        config.validate()?;
        Ok(config)
    }

    /// Shared drive strength, required by threshold scans (which quote
    /// thresholds in units of Ω).
    pub fn homogeneous_omega(&self) -> Result<f64, CliError> {
        match &self.omega {
            ScalarOrVec::Scalar(v) => Ok(*v),
            ScalarOrVec::PerSite(values)
                if values.windows(2).all(|w| w[0] == w[1]) && !values.is_empty() =>
            {
                Ok(values[0])
            }
            ScalarOrVec::PerSite(_) => Err(CliError::input(
                "threshold scans need a homogeneous drive strength (array.omega)",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Explicit(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        #[serde(default)]
        spacing: Option<Spacing>,
    },
}

impl GridSpec {
    /// Materialize the grid. `default_spacing` applies when a range omits
    /// `spacing` (log for decay rates, linear otherwise).
    pub fn build(&self, default_spacing: Spacing) -> Result<Vec<f64>, CliError> {
        let grid = match self {
            GridSpec::Explicit(values) => values.clone(),
            GridSpec::Range {
                start,
                stop,
                count,
                spacing,
            } => {
                let spacing = spacing.unwrap_or(default_spacing);
                if *count < 2 {
                    return Err(CliError::input("grid count must be at least 2"));
                }
                if !(start.is_finite() && stop.is_finite()) || start >= stop {
                    return Err(CliError::input("grid needs finite start < stop"));
                }
                if spacing == Spacing::Log && *start <= 0.0 {
                    return Err(CliError::input("log-spaced grids need start > 0"));
                }
                let count = *count;
                let mut grid: Vec<f64> = match spacing {
                    Spacing::Linear => {
                        let step = (stop - start) / (count as f64 - 1.0);
                        (0..count).map(|i| start + step * i as f64).collect()
                    }
                    Spacing::Log => {
                        let ratio = (stop / start).powf(1.0 / (count as f64 - 1.0));
                        (0..count).map(|i| start * ratio.powi(i as i32)).collect()
                    }
                };
                // Pin the endpoint exactly; accumulated rounding must not
                // leak into emitted axis values.
                grid[count - 1] = *stop;
                grid
            }
        };
        if grid.len() < 2 {
            return Err(CliError::input("grid must contain at least 2 points"));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::input("grid values must be strictly increasing"));
        }
        if grid.iter().any(|v| !v.is_finite()) {
            return Err(CliError::input("grid values must be finite"));
        }
        Ok(grid)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: String,
    pub grid: GridSpec,
    pub measures: Vec<String>,
    #[serde(default)]
    pub cut: Option<Vec<usize>>,
    #[serde(default)]
    pub site: Option<usize>,
    #[serde(default)]
    pub pair: Option<(usize, usize)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdSection {
    #[serde(default)]
    pub s_grid: Option<GridSpec>,
    #[serde(default)]
    pub policy: Option<String>,
    #[serde(default)]
    pub fixed_dephasing: Option<f64>,
}

impl ThresholdSection {
    pub fn gamma_policy(&self, fallback_dephasing: f64) -> Result<GammaPolicy, CliError> {
        match self.policy.as_deref() {
            None => Ok(default_policy(fallback_dephasing)),
            Some("zero") => Ok(GammaPolicy::Zero),
            Some("equal") => Ok(GammaPolicy::EqualToDecay),
            Some("fixed") => {
                let g = self.fixed_dephasing.ok_or_else(|| {
                    CliError::input("threshold.policy = \"fixed\" needs threshold.fixed_dephasing")
                })?;
                if g < 0.0 {
                    return Err(CliError::input("threshold.fixed_dephasing must be ≥ 0"));
                }
                Ok(GammaPolicy::Fixed(g))
            }
            Some(other) => Err(CliError::input(format!(
                "unknown threshold.policy `{other}` (expected zero, equal, or fixed)"
            ))),
        }
    }
}

/// Without an explicit policy, a configured homogeneous dephasing rate is
/// held fixed during the scan; otherwise dephasing-free.
pub fn default_policy(fallback_dephasing: f64) -> GammaPolicy {
    if fallback_dephasing > 0.0 {
        GammaPolicy::Fixed(fallback_dephasing)
    } else {
        GammaPolicy::Zero
    }
}

/// Parse a configuration file; `.json` selects JSON, anything else TOML.
pub fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let is_json = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    } else {
        toml::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}
