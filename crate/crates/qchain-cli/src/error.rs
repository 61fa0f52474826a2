//! Error classification for exit codes: input problems exit 1, solver
//! failures exit 2.

use qchain::{GeneratorError, MeasureError, SolveError, ThresholdError};

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration, arguments, or I/O destination — exit code 1.
    Input(String),
    /// A well-formed problem the solvers could not complete — exit code 2.
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Solver(_) => 2,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Solver(msg) => write!(f, "solver failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Generator(g) => g.into(),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::WrongQubitCount { .. }
            | MeasureError::SiteOutOfRange { .. }
            | MeasureError::BipartitionMismatch { .. } => CliError::Input(e.to_string()),
            MeasureError::Solve(inner) => inner.into(),
            MeasureError::Opalg(inner) => CliError::Solver(inner.to_string()),
        }
    }
}

impl From<ThresholdError> for CliError {
    fn from(e: ThresholdError) -> Self {
        match e {
            ThresholdError::Solve(inner) => inner.into(),
            ThresholdError::Measure(inner) => inner.into(),
            ThresholdError::NoSignChange { .. } => CliError::Solver(e.to_string()),
        }
    }
}
