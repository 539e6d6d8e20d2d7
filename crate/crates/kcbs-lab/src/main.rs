//! Command-line front end: reproduces the pentagram numbers, runs
//! verification sweeps and Monte Carlo experiments, and emits text, CSV, or
//! JSON reports.
//!
//! Exit codes: 0 on success, 2 on input or domain errors, 3 when a
//! verification check fails.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "kcbs-lab",
    version,
    about = "Contextuality laboratory: KCBS pentagram statistics and a sphere-based hidden-variable model for the qutrit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the five KCBS tests, verify adjacency orthogonality, and compare
    /// the quantum sum against the classical bound
    Pentagram(PentagramArgs),
    /// Compare quantum, closed-form, and quadrature joint distributions for
    /// one gauge-fixed context
    Context(ContextArgs),
    /// Scan the valid (zeta_canon, theta) domain and tabulate
    /// quantum-vs-model discrepancies
    Sweep(SweepArgs),
    /// Estimate a context's joint distribution by sampling hidden
    /// configurations
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct PentagramArgs {
    /// Pentagram opening angle in radians
    #[arg(long, default_value_t = std::f64::consts::PI / 5.0)]
    zeta_pent: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ContextArgs {
    /// First-axis polar angle in radians; defaults to the gauge-fixed
    /// pentagram context
    #[arg(long)]
    zeta_canon: Option<f64>,
    /// Second-axis polar angle in radians; defaults to the gauge-fixed
    /// pentagram context
    #[arg(long)]
    theta: Option<f64>,
    /// Free phase of the second axis in radians (probability-irrelevant)
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of grid points per axis
    #[arg(long, default_value_t = 20)]
    grid: u32,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// First-axis polar angle in radians; defaults to the gauge-fixed
    /// pentagram context
    #[arg(long)]
    zeta_canon: Option<f64>,
    /// Second-axis polar angle in radians; defaults to the gauge-fixed
    /// pentagram context
    #[arg(long)]
    theta: Option<f64>,
    /// Free phase of the second axis in radians (echoed, never sampled)
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    /// Number of hidden configurations to draw
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Seed of the deterministic generator
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this path instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error(transparent)]
    Lab(#[from] kcbs_lab::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Pentagram(args) => {
            let report = commands::pentagram(args.zeta_pent)?;
            let rendered = output::render_pentagram(&report, args.out.format)?;
            output::emit(args.out.output.as_deref(), &rendered)?;
            // Orthogonality failure is a verification failure, not an input error.
            if report.orthogonality_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Command::Context(args) => {
            let (zeta_canon, theta) =
                resolve_context_angles(args.zeta_canon, args.theta);
            let report = commands::context(zeta_canon, theta, args.rho)?;
            let rendered = output::render_context(&report, args.out.format)?;
            output::emit(args.out.output.as_deref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep(args) => {
            let report = commands::sweep(args.grid)?;
            let rendered = output::render_sweep(&report, args.out.format);
            output::emit(args.out.output.as_deref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate(args) => {
            let (zeta_canon, theta) =
                resolve_context_angles(args.zeta_canon, args.theta);
            let threads = thread_cap()?;
            let report = commands::simulate_cmd(
                zeta_canon, theta, args.rho, args.samples, args.seed, threads,
            )?;
            let rendered = output::render_simulate(&report, args.out.format)?;
            output::emit(args.out.output.as_deref(), &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Fills omitted context angles from the gauge-fixed pentagram pair.
fn resolve_context_angles(zeta_canon: Option<f64>, theta: Option<f64>) -> (f64, f64) {
    if let (Some(z), Some(t)) = (zeta_canon, theta) {
        return (z, t);
    }
    let defaults = commands::pentagram_context_params();
    (
        zeta_canon.unwrap_or(defaults.zeta_canon),
        theta.unwrap_or(defaults.theta),
    )
}

/// Optional cap on simulate's worker threads from `KCBS_LAB_THREADS`.
fn thread_cap() -> Result<Option<usize>, AppError> {
    match std::env::var("KCBS_LAB_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(AppError::Usage(format!(
                "KCBS_LAB_THREADS must be a positive integer, got {raw:?}"
            ))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(err) => Err(AppError::Usage(format!("KCBS_LAB_THREADS: {err}"))),
    }
}
