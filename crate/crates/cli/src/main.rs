//! `gtep` — expansion planning from the command line.
//!
//! Subcommands: `validate`, `plan`, `dispatch`, `export`, `suggest-days`.
//! Exit codes: 0 success, 1 validation failure, 2 solve failure,
//! 3 i/o failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "gtep",
    version,
    about = "Generation and transmission expansion planning engine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolverArgs {
    /// Solver backend: embedded | external
    #[arg(long, default_value = "embedded")]
    backend: String,
    /// External solver command template with {mps} and {sol} placeholders
    #[arg(long, env = "GTEP_SOLVER_CMD")]
    solver_cmd: Option<String>,
    /// Relative MIP gap
    #[arg(long)]
    mip_gap: Option<f64>,
    /// Primal feasibility tolerance
    #[arg(long)]
    feas_tol: Option<f64>,
    /// Reduced-cost (optimality) tolerance
    #[arg(long)]
    opt_tol: Option<f64>,
    /// Branch-and-bound node limit
    #[arg(long)]
    node_limit: Option<u64>,
    /// Wall-clock limit in seconds
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance against every model invariant
    Validate {
        #[arg(short, long)]
        instance: PathBuf,
    },
    /// Run the rolling-horizon expansion plan and write reports
    Plan {
        #[arg(short, long)]
        instance: PathBuf,
        /// Output directory (created if missing)
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Also write each year's sealed model as MPS and LP text
        #[arg(long)]
        export_models: bool,
        /// Also dump each year's variable index as JSON
        #[arg(long)]
        dump_index: bool,
    },
    /// Operation-only dispatch with every investment decision fixed
    Dispatch {
        #[arg(short, long)]
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Study year to dispatch
        #[arg(long, default_value_t = 1)]
        year: usize,
        /// plan.json whose decisions are applied; without it only
        /// obligatory projects are in
        #[arg(long)]
        plan: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Export one year's sealed model as MPS and LP text
    Export {
        #[arg(short, long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        year: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Suggest a typical-day assignment by clustering daily profiles
    SuggestDays {
        /// JSON file with 365x24 `demand` (and optional `renewable`) values
        #[arg(long)]
        profiles: PathBuf,
        /// Typical days per season
        #[arg(short, long)]
        clusters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// 12 comma-separated 0-based season indices, January first
        /// (default: one season)
        #[arg(long)]
        month_seasons: Option<String>,
        /// Output file (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { instance } => commands::validate(&instance),
        Command::Plan {
            instance,
            output,
            solver,
            export_models,
            dump_index,
        } => commands::plan(&instance, &output, &solver, export_models, dump_index),
        Command::Dispatch {
            instance,
            output,
            year,
            plan,
            solver,
        } => commands::dispatch(&instance, &output, year, plan.as_deref(), &solver),
        Command::Export {
            instance,
            year,
            output,
        } => commands::export(&instance, year, &output),
        Command::SuggestDays {
            profiles,
            clusters,
            seed,
            month_seasons,
            output,
        } => commands::suggest_days(
            &profiles,
            clusters,
            seed,
            month_seasons.as_deref(),
            output.as_deref(),
        ),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {:#}", err.error);
            err.code
        }
    }
}

/// Error with the exit code it maps to.
pub struct CliFailure {
    pub code: ExitCode,
    pub error: anyhow::Error,
}

impl CliFailure {
    pub fn io(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: ExitCode::from(3),
            error: error.into(),
        }
    }

    pub fn solve(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: ExitCode::from(2),
            error: error.into(),
        }
    }
}
