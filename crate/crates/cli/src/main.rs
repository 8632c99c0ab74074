mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hodge-wp", version, about = "Limiting Hodge data, potential classification and Weil-Petersson distance checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Monodromy weight filtration of each nilpotent, plus cone invariance for pairs.
    Filtration,
    /// Finite/infinite class and degree of each divisor.
    ClassifyDivisor,
    /// Polynomial part of the potential and its dominant terms.
    Expand,
    /// Match the dominant polynomial against the case table.
    ClassifyPotential,
    /// Metric tensor samples along a curve.
    Metric,
    /// Length series along one curve as CSV, with a divergence verdict.
    Distance,
    /// Probe-family divergence check for a pair of divisors.
    Corollary,
    /// Run every builtin fixture and print a summary table.
    Demo,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Diverge,
    Bounded,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Options {
    /// JSON datum or polynomial.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Destination of the main artifact (stdout when absent).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Builtin fixture name instead of --input.
    #[arg(long, global = true)]
    pub fixture: Option<String>,
    /// Named probe curve or a JSON curve file.
    #[arg(long, global = true)]
    pub curve: Option<String>,
    #[arg(long, global = true, default_value_t = 10.0)]
    pub t0: f64,
    #[arg(long = "T", global = true, default_value_t = 1e4)]
    pub t_end: f64,
    #[arg(long, global = true, default_value_t = 13)]
    pub checkpoints: usize,
    #[arg(long, global = true, default_value_t = 1e2)]
    pub grid_lo: f64,
    #[arg(long, global = true, default_value_t = 1e6)]
    pub grid_hi: f64,
    #[arg(long, global = true, default_value_t = 13)]
    pub grid_points: usize,
    /// Relative tolerance for panel refinement.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Where `distance` writes its verdict JSON (stderr when absent).
    #[arg(long, global = true)]
    pub verdict: Option<PathBuf>,
    /// Exit with status 4 unless the verdict matches.
    #[arg(long, global = true, value_enum)]
    pub expect: Option<Expect>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.opts) {
        Ok(commands::Outcome::Positive) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Negative(why)) => {
            eprintln!("verdict negative: {why}");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
