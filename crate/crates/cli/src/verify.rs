use std::io::Write;

use clap::builder::PossibleValuesParser;
use clap::Args;
use gaussmix::checks::{self, CheckReport, CHECKS, DEFAULT_SEED};

use crate::Failure;

#[derive(Args)]
pub struct VerifyArgs {
    /// Run only this check (repeatable); every check runs by default
    #[arg(long, value_name = "NAME", value_parser = PossibleValuesParser::new(checks::check_names()))]
    check: Vec<String>,
    /// Random samples per check [default: each check's own count]
    #[arg(long, value_name = "COUNT", value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
    /// Seed of the sampling RNG
    #[arg(long, value_name = "U64", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// List the checks with their default sample counts and exit
    #[arg(long)]
    list: bool,
    /// One JSON object per check instead of a text line
    #[arg(long)]
    json: bool,
}

fn line(r: &CheckReport) -> String {
    format!(
        "{}  {:<22} samples {:>6}  worst {:.3e}  tolerance {:.0e}",
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.samples,
        r.worst_residual,
        r.tolerance
    )
}

pub fn run(a: &VerifyArgs) -> Result<(), Failure> {
    if a.list {
        for (name, samples, _) in CHECKS {
            println!("{name:<22} {samples}");
        }
        return Ok(());
    }
    let names: Vec<&str> = if a.check.is_empty() {
        checks::check_names().collect()
    } else {
        a.check.iter().map(String::as_str).collect()
    };
    let samples = a.samples.map(|n| n as usize);

    let mut failed = Vec::new();
    let stdout = std::io::stdout();
    for name in names {
        match checks::run_check(name, samples, a.seed) {
            Ok(r) => {
                let text = if a.json {
                    serde_json::to_string(&r).map_err(|e| Failure::Error(e.to_string()))?
                } else {
                    line(&r)
                };
                writeln!(stdout.lock(), "{text}")?;
                if !r.passed {
                    failed.push(name.to_string());
                }
            }
            Err(e) => {
                writeln!(stdout.lock(), "FAIL  {name:<22} error: {e}")?;
                failed.push(name.to_string());
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}
