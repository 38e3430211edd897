//! `gaussmix`: single-point evaluation, sweep tables and numerical
//! cross-checks for a Gaussian state mixed with a thermal mode at a beam
//! splitter.
//!
//! Exit codes: 0 success, 1 invalid input or runtime error, 2 a check failed.

mod parse;
mod point;
mod sweep;
mod verify;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

pub const UNITS: &str = "Units: photon numbers are mean photon numbers (photons); \
τ is a dimensionless transmissivity in [0, 1]; entropic quantities \
(discord, mutual information, log-negativity) are in nats, or bits with --bits.";

/// Default directory for sweep output when `--out` is not given.
pub const OUT_DIR_ENV: &str = "GAUSSMIX_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "gaussmix",
    version,
    about = "Nonclassicality, discord and entanglement of Gaussian states mixed at a beam splitter",
    after_help = UNITS
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every quantifier for one input state, reference and splitter
    #[command(allow_negative_numbers = true, after_help = UNITS)]
    Point(point::PointArgs),
    /// Tabulate a sweep as CSV (or JSON)
    #[command(after_help = UNITS)]
    Sweep(sweep::SweepArgs),
    /// Run the closed-form versus numerical cross-checks
    #[command(after_help = UNITS)]
    Verify(verify::VerifyArgs),
}

pub enum Failure {
    /// Bad flag, bad spec, or a computation that could not finish.
    Error(String),
    /// Names of the checks that failed.
    Checks(Vec<String>),
}

impl From<gaussmix::Error> for Failure {
    fn from(e: gaussmix::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match &cli.command {
        Command::Point(a) => point::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Verify(a) => verify::run(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Checks(failed)) => {
            eprintln!("failed checks: {}", failed.join(", "));
            ExitCode::from(2)
        }
    }
}
