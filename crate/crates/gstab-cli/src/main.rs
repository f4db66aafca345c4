//! `gstab`: decide whether a Gaussian state is stabilizable under a linear
//! Lindblad dissipator, build the stabilizing quadratic Hamiltonian, and
//! verify stationarity by integrating the covariance dynamics.
//!
//! Exit codes: 0 success (and criteria pass for `check`), 1 analysis
//! failure (criteria fail, degenerate spectrum, singular covariance, ...),
//! 2 invalid input (malformed scenario, bad flags, empty ranges).

mod commands;
mod output;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{}: {source}", source.name())]
    Analysis {
        #[from]
        source: gstab_core::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use gstab_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Json(_) | CliError::Io(_) => 2,
            // Parameter- and state-level problems are input errors; the
            // rest are analysis outcomes.
            CliError::Analysis {
                source:
                    E::StepTooLarge { .. }
                    | E::InvalidParameter { .. }
                    | E::UnphysicalState { .. }
                    | E::DimensionMismatch { .. }
                    | E::NonSymmetric { .. },
            } => 2,
            CliError::Analysis { .. } => 1,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gstab",
    version,
    about = "Stabilizability analysis of Gaussian states under linear Lindblad dissipation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ScanMode {
    /// Single damped mode: the stabilizable surface in the (y, z) chart.
    Hyperboloid,
    /// Two locally damped modes: the pure EPR family.
    Epr,
}

#[derive(Debug, clap::Args)]
pub struct ScanArgs {
    /// Which closed-form family to tabulate.
    #[arg(long, value_enum)]
    pub mode: ScanMode,
    /// Characteristic length scale.
    #[arg(long, default_value_t = 1.0)]
    pub x0: f64,
    /// Damping rate (the EPR analysis assumes equal rates on both modes).
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    pub y_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub y_max: f64,
    /// Number of grid points on the y axis.
    #[arg(long, default_value_t = 101)]
    pub y_steps: usize,
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    pub z_min: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub z_max: f64,
    /// Number of grid points on the z axis.
    #[arg(long, default_value_t = 101)]
    pub z_steps: usize,
    #[arg(long, default_value_t = 0.25)]
    pub sigma_p_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub sigma_p_max: f64,
    /// Number of grid points for the center-of-mass momentum width.
    #[arg(long, default_value_t = 201)]
    pub sigma_p_steps: usize,
    #[arg(long, default_value_t = 0.25)]
    pub sigma_x_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub sigma_x_max: f64,
    /// Number of grid points for the relative position width.
    #[arg(long, default_value_t = 201)]
    pub sigma_x_steps: usize,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the stabilizability criteria for a scenario state.
    Check { scenario: PathBuf },
    /// Construct the stabilizing quadratic Hamiltonian for a scenario state.
    Synthesize { scenario: PathBuf },
    /// Integrate the moment equations and emit a CSV trajectory.
    Simulate {
        scenario: PathBuf,
        /// Final time, in inverse-rate units.
        #[arg(long, default_value_t = 10.0)]
        t_final: f64,
        /// Integration step; derived from the drift spectrum when omitted.
        #[arg(long)]
        dt: Option<f64>,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a closed-form state family (surface or EPR grid) as CSV.
    Scan(ScanArgs),
    /// Full report: criteria, spectrum, purity, physicality, entanglement
    /// flag and strict/relaxed classification.
    Analyze { scenario: PathBuf },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check { scenario } => commands::check(scenario),
        Command::Synthesize { scenario } => commands::synthesize_cmd(scenario),
        Command::Simulate {
            scenario,
            t_final,
            dt,
            out,
        } => commands::simulate(scenario, *t_final, *dt, out.as_ref()),
        Command::Scan(args) => commands::scan(args),
        Command::Analyze { scenario } => commands::analyze(scenario),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
