//! `cone-excursions`: evaluate the closed forms, audit them numerically,
//! simulate excursions on the modular or a Hecke surface.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a check or threshold failed,
//! 1 anything else (I/O).

mod commands;
mod grid;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cone_excursions::excursion::SamplingLaw;

const EXIT_INVALID: u8 = 2;
const EXIT_THRESHOLD: u8 = 3;

#[derive(Parser)]
#[command(name = "cone-excursions", version, about = "Excursion depths into cone-point neighborhoods")]
struct Cli {
    /// Worker threads for the parallel stages. Output does not depend on it.
    #[arg(long, global = true, env = "CONE_EXCURSIONS_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate Λ, Λ*, dist and dist* on a z grid.
    Eval(EvalArgs),
    /// Compare the closed forms against quadrature and Monte Carlo.
    Verify(VerifyArgs),
    /// Simulate excursions and compare their depths with the limit law.
    Simulate(SimulateArgs),
    /// Tabulate the area-parameterized distributions.
    Area(AreaArgs),
    /// Cone constants per order, or a saved audit rendered as a table.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
    /// Aligned columns; `verify` and `report` only.
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Uniform,
    CrossSection,
}

impl From<Law> for SamplingLaw {
    fn from(l: Law) -> Self {
        match l {
            Law::Uniform => SamplingLaw::Uniform,
            Law::CrossSection => SamplingLaw::CrossSection,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Args, Debug, Serialize)]
pub struct EvalArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u64,
    /// Radius for the dist column; defaults to r_k.
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, default_value = "0:0.05:1")]
    pub z_grid: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Cone orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,7,12")]
    pub k: Vec<u64>,
    #[arg(long, default_value = "0.125:0.125:2.5")]
    pub z_grid: String,
    /// Monte Carlo samples per cone order and region.
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    /// `modular` or `hecke:q`.
    #[arg(long, default_value = "modular")]
    pub group: String,
    /// Cone order; must match the group when given.
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, default_value_t = 0.3)]
    pub r: f64,
    /// Comparison grid; defaults to 51 points on [0, r] (or [0, r_k]).
    #[arg(long)]
    pub z_grid: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub geodesics: u64,
    #[arg(long, default_value_t = 1000.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Neighbor-ring depth around the tiles near the geodesic.
    #[arg(long, default_value_t = cone_excursions::excursion::DEFAULT_RING)]
    pub ring: usize,
    #[arg(long, value_enum, default_value_t = Law::Uniform)]
    pub law: Law,
    /// Compare approximating excursions with dist* instead of all with dist.
    #[arg(long)]
    pub approximating: bool,
    /// Compare area depths with the area-parameterized law.
    #[arg(long)]
    pub area: bool,
    /// Largest accepted Kolmogorov distance.
    #[arg(long, default_value_t = 0.02)]
    pub max_sup: f64,
    /// Fewest compared records for the comparison to count.
    #[arg(long, default_value_t = 1000)]
    pub min_records: usize,
    /// Also write every excursion record here (CSV, or JSON with --format json).
    #[arg(long)]
    #[serde(skip)]
    pub records: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct AreaArgs {
    #[arg(long, default_value_t = 3)]
    pub k: u64,
    /// Area radius R.
    #[arg(long)]
    pub r: f64,
    /// Area depths Z; defaults to 21 points on [0, R].
    #[arg(long)]
    pub z_grid: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ReportArgs {
    #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8,12")]
    pub k: Vec<u64>,
    /// Render this saved `verify --format json` artifact instead.
    #[arg(long)]
    #[serde(skip)]
    pub audit: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

/// Failures with a dedicated exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Threshold(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Invalid(m) => write!(f, "invalid input: {m}"),
            Failure::Threshold(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

pub fn invalid(msg: impl fmt::Display) -> anyhow::Error {
    Failure::Invalid(msg.to_string()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use cone_excursions::Error as E;
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Invalid(_) => EXIT_INVALID,
            Failure::Threshold(_) => EXIT_THRESHOLD,
        };
    }
    match err.downcast_ref::<E>() {
        Some(E::OutOfDomain { .. } | E::ConeOrder { .. } | E::Empty(_)) => EXIT_INVALID,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(invalid("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Area(a) => commands::area(&a),
        Command::Report(a) => commands::report(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
