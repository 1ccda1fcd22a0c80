//! Argument parsing and validation. Every rejected input names the violated
//! precondition and the offending flag; validation failures exit with
//! code 1, numerical non-convergence with code 2.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mqlandau_core::heun::HeunError;
use mqlandau_core::oracle::OracleError;
use mqlandau_core::specfun::SpecFunError;
use mqlandau_core::spectra::{ConfinementSpec, SpectraError};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) => 1,
            Self::Numerical(_) => 2,
        }
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Self::Validation(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Validation(msg) => write!(f, "{msg}"),
            Self::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::BracketTooSmall { .. } => Self::Numerical(e.to_string()),
            SpectraError::SpecFun(SpecFunError::NonConvergence { .. }) => {
                Self::Numerical(e.to_string())
            }
            SpectraError::Heun(HeunError::NotStabilized { .. }) => Self::Numerical(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::GridTooCoarse { .. } => Self::Numerical(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

impl From<HeunError> for CliError {
    fn from(e: HeunError) -> Self {
        SpectraError::Heun(e).into()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Validation(format!("io error: {e}"))
    }
}

/// Spectrum toolkit for a neutral particle with a magnetic quadrupole moment
/// in a uniform effective magnetic field, with optional brute-force
/// verification of every analytic level.
#[derive(Parser)]
#[command(name = "mqlandau", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Energy levels for a confinement scenario over ranges of (n, l).
    Spectrum(SpectrumArgs),
    /// Allowed angular frequencies from the series-truncation condition.
    Frequency(FrequencyArgs),
    /// Normalized radial wavefunction of a constrained level, as CSV.
    Wavefunction(WavefunctionArgs),
    /// Run the built-in verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    /// Unconfined Landau-type system.
    Landau,
    /// Hard wall at --rho0, field strength --Mlambda (0 allowed).
    Hardwall,
    /// Coulomb-type potential alpha/rho.
    Coulomb,
    /// Linear potential eta*rho.
    Linear,
    /// Coulomb-type plus linear potential.
    Mixed,
}

impl Scenario {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Landau => "landau",
            Self::Hardwall => "hardwall",
            Self::Coulomb => "coulomb",
            Self::Linear => "linear",
            Self::Mixed => "mixed",
        }
    }
}

/// Inclusive integer range: `3` or `0..2` (both ends included).
#[derive(Debug, Clone, Copy)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| format!("`{t}` is not an integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("range `{s}` is empty (lo > hi)"));
        }
        if hi - lo > 1000 {
            return Err(format!("range `{s}` spans more than 1000 values"));
        }
        Ok(Self { lo, hi })
    }
}

impl IntRange {
    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.lo..=self.hi
    }

    pub fn display(&self) -> String {
        if self.lo == self.hi {
            format!("{}", self.lo)
        } else {
            format!("{}..{}", self.lo, self.hi)
        }
    }
}

#[derive(Args)]
pub struct SpectrumArgs {
    /// Confinement scenario.
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    /// Particle mass (natural units).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub m: f64,
    /// Coulomb-type coupling (coulomb and mixed scenarios).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Linear coupling (linear and mixed scenarios).
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Effective field strength M*lambda (landau and hardwall scenarios).
    #[arg(long = "Mlambda", allow_hyphen_values = true)]
    pub m_lambda: Option<f64>,
    /// Hard-wall radius.
    #[arg(long, allow_hyphen_values = true)]
    pub rho0: Option<f64>,
    /// Radial quantum number or inclusive range, e.g. `1` or `0..2`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: IntRange,
    /// Angular momentum quantum number or inclusive range, e.g. `0..2`.
    #[arg(long, allow_hyphen_values = true)]
    pub l: IntRange,
    /// Hard wall: solve the exact quantization condition instead of the
    /// asymptotic formula.
    #[arg(long)]
    pub exact: bool,
    /// Hard wall with --exact: upper end of the energy search bracket.
    #[arg(long)]
    pub e_max: Option<f64>,
    /// Cross-check each level against the finite-difference eigensolver.
    #[arg(long)]
    pub oracle: bool,
    /// Oracle grid points.
    #[arg(long, default_value_t = 4000)]
    pub grid_points: usize,
    /// Oracle box size override (decay boundary only).
    #[arg(long, allow_hyphen_values = true)]
    pub rho_max: Option<f64>,
    /// Output format.
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// Write the report to a file (atomically) instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct FrequencyArgs {
    /// Confinement scenario (coulomb, linear, or mixed).
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub m: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Radial quantum number or inclusive range (n >= 1).
    #[arg(long, allow_hyphen_values = true)]
    pub n: IntRange,
    /// Angular momentum quantum number or inclusive range.
    #[arg(long, allow_hyphen_values = true)]
    pub l: IntRange,
    #[arg(long, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct WavefunctionArgs {
    /// Confinement scenario (coulomb, linear, or mixed).
    #[arg(long, value_enum)]
    pub scenario: Scenario,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub m: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    /// Radial quantum number (single value, n >= 1).
    #[arg(long)]
    pub n: u32,
    /// Angular momentum quantum number (single value).
    #[arg(long, allow_hyphen_values = true)]
    pub l: i32,
    /// Which tuned frequency to use when several exist (ascending order).
    #[arg(long, default_value_t = 0)]
    pub root_index: usize,
    /// Sample grid upper end (dimensionless radius).
    #[arg(long, default_value_t = 6.0)]
    pub r_max: f64,
    /// Sample grid size.
    #[arg(long, default_value_t = 601)]
    pub points: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Emit the machine-readable JSON report instead of text lines.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Json => "json",
            Self::Csv => "csv",
        }
    }
}

fn positive(flag: &str, value: f64) -> Result<f64, CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::validation(format!(
            "{flag} must be > 0 and finite (got {value})"
        )))
    }
}

fn required(flag: &str, scenario: &str, value: Option<f64>) -> Result<f64, CliError> {
    value.ok_or_else(|| {
        CliError::validation(format!("{flag} is required for --scenario {scenario}"))
    })
}

fn rejected(flag: &str, scenario: &str, value: Option<f64>) -> Result<(), CliError> {
    if value.is_some() {
        Err(CliError::validation(format!(
            "{flag} does not apply to --scenario {scenario}"
        )))
    } else {
        Ok(())
    }
}

/// Build the validated confinement description from scenario flags.
pub fn resolve_scenario(
    scenario: Scenario,
    alpha: Option<f64>,
    eta: Option<f64>,
    m_lambda: Option<f64>,
    rho0: Option<f64>,
) -> Result<(ConfinementSpec, f64), CliError> {
    let name = scenario.as_str();
    match scenario {
        Scenario::Landau => {
            rejected("--alpha", name, alpha)?;
            rejected("--eta", name, eta)?;
            rejected("--rho0", name, rho0)?;
            let ml = positive("--Mlambda", required("--Mlambda", name, m_lambda)?)?;
            Ok((ConfinementSpec::None, ml))
        }
        Scenario::Hardwall => {
            rejected("--alpha", name, alpha)?;
            rejected("--eta", name, eta)?;
            let rho0 = positive("--rho0", required("--rho0", name, rho0)?)?;
            let ml = m_lambda.unwrap_or(0.0);
            if ml < 0.0 || !ml.is_finite() {
                return Err(CliError::validation(format!(
                    "--Mlambda must be >= 0 and finite (got {ml})"
                )));
            }
            Ok((ConfinementSpec::HardWall { rho0 }, ml))
        }
        Scenario::Coulomb => {
            rejected("--eta", name, eta)?;
            rejected("--Mlambda", name, m_lambda)?;
            rejected("--rho0", name, rho0)?;
            let alpha = positive("--alpha", required("--alpha", name, alpha)?)?;
            Ok((ConfinementSpec::Coulomb { alpha }, 0.0))
        }
        Scenario::Linear => {
            rejected("--alpha", name, alpha)?;
            rejected("--Mlambda", name, m_lambda)?;
            rejected("--rho0", name, rho0)?;
            let eta = positive("--eta", required("--eta", name, eta)?)?;
            Ok((ConfinementSpec::Linear { eta }, 0.0))
        }
        Scenario::Mixed => {
            rejected("--Mlambda", name, m_lambda)?;
            rejected("--rho0", name, rho0)?;
            let alpha = positive("--alpha", required("--alpha", name, alpha)?)?;
            let eta = positive("--eta", required("--eta", name, eta)?)?;
            Ok((ConfinementSpec::CoulombLinear { alpha, eta }, 0.0))
        }
    }
}

pub fn check_mass(m: f64) -> Result<f64, CliError> {
    positive("--m", m)
}

/// Quantum-number ranges: `l` fits i32; `n` is nonnegative (and >= 1 for
/// constrained scenarios, checked at the call site).
pub fn check_l(range: &IntRange) -> Result<Vec<i32>, CliError> {
    range
        .values()
        .map(|v| {
            i32::try_from(v)
                .map_err(|_| CliError::validation(format!("--l value {v} out of range")))
        })
        .collect()
}

pub fn check_n(range: &IntRange, min: u32) -> Result<Vec<u32>, CliError> {
    range
        .values()
        .map(|v| {
            if v < min as i64 {
                Err(CliError::validation(format!(
                    "--n must be >= {min} for this scenario (got {v})"
                )))
            } else {
                u32::try_from(v)
                    .map_err(|_| CliError::validation(format!("--n value {v} out of range")))
            }
        })
        .collect()
}
