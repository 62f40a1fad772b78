//! `tachyon`: command-line access to the Gaussian-convolution toolkit.

mod commands;
mod error;
mod output;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::output::Output;

#[derive(Debug, Parser)]
#[command(name = "tachyon", version, about = "Solve and inspect phi^p = K phi")]
struct Cli {
    /// Worker threads for the parallel loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Directory for output files; falls back to $TACHYON_OUT_DIR, then ".".
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate H_n or V_n, optionally projecting a function onto the basis.
    Hermite(commands::hermite::HermiteArgs),
    /// Evaluate K f on a grid.
    ApplyK(commands::hermite::ApplyKArgs),
    /// Solve phi^p = K phi by fixed-point iteration or the truncated system.
    Solve(commands::solve::SolveArgs),
    /// Build the erf-ansatz boundary-value solution.
    Bvp(commands::bvp::BvpArgs),
    /// Evaluate the heat-flow interpolant u(x, t).
    Interp(commands::hermite::InterpArgs),
    /// Track zeros of heat polynomials near a branching point.
    Branch(commands::branch::BranchArgs),
    /// Run numerical self-checks.
    Verify(commands::verify::VerifyArgs),
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let out = Output::resolve(cli.out_dir);
    match cli.command {
        Command::Hermite(a) => commands::hermite::hermite(&a, &out),
        Command::ApplyK(a) => commands::hermite::apply_k(&a, &out),
        Command::Solve(a) => commands::solve::run(&a, &out),
        Command::Bvp(a) => commands::bvp::run(&a, &out),
        Command::Interp(a) => commands::hermite::interp(&a, &out),
        Command::Branch(a) => commands::branch::run(&a, &out),
        Command::Verify(a) => commands::verify::run(&a, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
