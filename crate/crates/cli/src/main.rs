mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domcore::Error;

/// Classify square-free monomial ideals and graph ideals up to homotopy.
#[derive(Debug, Parser)]
#[command(name = "domcore", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Cap on enumerated faces and on explored resolutions.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Ideal attached to a graph input.
    #[arg(long, global = true, value_enum, default_value_t = GraphIdeal::Edge)]
    pub ideal: GraphIdeal,

    /// Include wall-clock timings; output is then no longer deterministic.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphIdeal {
    /// Edge ideal: the independence complex.
    Edge,
    /// Closed-neighbourhood ideal: the dominance complex.
    Star,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greedy classification as conical or spherical, with depth and core.
    Classify {
        input: PathBuf,
        /// Enumerate every maximal resolution and compare their cores.
        #[arg(long)]
        all_resolutions: bool,
    },
    /// Reduced integral homology of the complex.
    Homology { input: PathBuf },
    /// Reduced Euler characteristic by face enumeration and by covers.
    Euler { input: PathBuf },
    /// Domination, independent domination, vertex cover, edge cover and
    /// matching numbers of a graph.
    Invariants { input: PathBuf },
    /// Emit and verify a collapse plan onto the predicted target.
    Collapse { input: PathBuf },
    /// Every analysis, plus the graph reports that apply.
    Report { input: PathBuf },
    /// Run the acceptance criteria.
    Verify,
}

/// Exit status for a finished command.
pub enum Status {
    Ok,
    Inconsistent,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Inconsistent) => ExitCode::from(1),
        Err(commands::Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
