use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use gaussmix::sweeps::{self, Family, ImbalanceSpan, Range, ScatterReference, SweepJob, SweepSpec};

use crate::parse::{family, photons, range, reference, span, transmissivity};
use crate::{Failure, OUT_DIR_ENV, UNITS};

#[derive(Args)]
pub struct SweepArgs {
    #[command(subcommand)]
    kind: Kind,
}

#[derive(Args)]
struct Common {
    /// JSON sweep spec (`"version": 1`); flags given here override its fields
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Output file [default: $GAUSSMIX_OUT_DIR/<kind>.csv, else ./<kind>.csv]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write JSON (metadata plus an array of row objects) instead of CSV
    #[arg(long)]
    json: bool,
    /// Entropic columns in bits instead of nats
    #[arg(long)]
    bits: bool,
    /// RNG seed, recorded in the output metadata
    #[arg(long, value_name = "U64")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Kind {
    /// Discord and PPT eigenvalue over an (n_s, n_t) grid, with the thermal,
    /// squeezed-vacuum, P-threshold and minimum-discord curves
    #[command(after_help = UNITS)]
    Surface {
        #[command(flatten)]
        common: Common,
        /// Squeezed photons n_s as MIN:MAX:COUNT[:log] [photons; default 0:5:51]
        #[arg(long, value_name = "RANGE", value_parser = range)]
        ns: Option<Range>,
        /// Thermal photons n_t as MIN:MAX:COUNT[:log] [photons; default 0:5:51]
        #[arg(long, value_name = "RANGE", value_parser = range)]
        nt: Option<Range>,
        /// Reference thermal photons n2 [photons; default 0]
        #[arg(long, value_name = "PHOTONS", value_parser = photons)]
        n2: Option<f64>,
        /// Transmissivity τ [dimensionless; default 0.5]
        #[arg(long, value_name = "TAU", value_parser = transmissivity)]
        tau: Option<f64>,
    },
    /// Both discords versus τ for an input family at fixed total photons N
    #[command(after_help = UNITS)]
    TauScan {
        #[command(flatten)]
        common: Common,
        /// Input family: thermal, squeezed-vacuum or threshold [default thermal]
        #[arg(long, value_name = "FAMILY", value_parser = family)]
        family: Option<Family>,
        /// Input photons N = n_s + n_t + 2 n_s n_t [photons; default 10]
        #[arg(long = "N", value_name = "PHOTONS", value_parser = photons)]
        total: Option<f64>,
        /// τ grid as MIN:MAX:COUNT [dimensionless; default 0:1:101]
        #[arg(long, value_name = "RANGE", value_parser = range)]
        tau: Option<Range>,
        /// Reference thermal photons n2 [photons; default 0]
        #[arg(long, value_name = "PHOTONS", value_parser = photons)]
        n2: Option<f64>,
    },
    /// Random inputs: n_s, n_t log-uniform on [1e-3, 1e2], τ uniform on [0, 1]
    #[command(after_help = UNITS)]
    Scatter {
        #[command(flatten)]
        common: Common,
        /// Number of sampled states [default 20000]
        #[arg(long, value_name = "COUNT")]
        samples: Option<usize>,
        /// Reference mode: vacuum, or random (n2 log-uniform on [1e-3, 1e2] photons)
        #[arg(long, value_name = "vacuum|random", value_parser = reference)]
        n2: Option<ScatterReference>,
        /// Fixed transmissivity τ instead of uniform sampling [dimensionless]
        #[arg(long, value_name = "TAU", value_parser = transmissivity)]
        tau: Option<f64>,
    },
    /// Discord of two thermal inputs versus the imbalance d = n1 − n2 at fixed N = n1 + n2
    #[command(after_help = UNITS)]
    Imbalance {
        #[command(flatten)]
        common: Common,
        /// Total thermal photons N [photons; default 5]
        #[arg(long = "N", value_name = "PHOTONS", value_parser = photons)]
        total: Option<f64>,
        /// Points per curve [default 101]
        #[arg(long, value_name = "COUNT")]
        points: Option<usize>,
        /// Comma-separated transmissivities, one curve each [dimensionless; default 0.5]
        #[arg(long, value_name = "TAU,...", value_delimiter = ',', value_parser = transmissivity)]
        tau: Option<Vec<f64>>,
        /// d range: full (−N..N) or nonnegative (0..N) [default full]
        #[arg(long, value_name = "SPAN", value_parser = span)]
        span: Option<ImbalanceSpan>,
    },
    /// Exact values against leading-order large-N forms along a log grid of N
    #[command(after_help = UNITS)]
    Asymptote {
        #[command(flatten)]
        common: Common,
        /// Input family: thermal, squeezed-vacuum or threshold [default squeezed-vacuum]
        #[arg(long, value_name = "FAMILY", value_parser = family)]
        family: Option<Family>,
        /// Input photons N as MIN:MAX:COUNT[:log] [photons; default 1:1e4:41:log]
        #[arg(long = "N", value_name = "RANGE", value_parser = range)]
        total: Option<Range>,
        /// Transmissivity τ [dimensionless; default 0.5]
        #[arg(long, value_name = "TAU", value_parser = transmissivity)]
        tau: Option<f64>,
        /// Reference thermal photons n2 [photons; default 0]
        #[arg(long, value_name = "PHOTONS", value_parser = photons)]
        n2: Option<f64>,
    },
    /// Squeezed photons at the separability threshold along fixed input energy n1
    #[command(after_help = UNITS)]
    ThresholdCurve {
        #[command(flatten)]
        common: Common,
        /// Input photons n1 as MIN:MAX:COUNT[:log] [photons; default 1e-2:1e4:61:log]
        #[arg(long, value_name = "RANGE", value_parser = range)]
        n1: Option<Range>,
        /// Comma-separated reference photons, one curve each [photons; default 0,0.1,1]
        #[arg(long, value_name = "PHOTONS,...", value_delimiter = ',', value_parser = photons)]
        n2: Option<Vec<f64>>,
        /// Transmissivity τ, strictly inside (0, 1) [dimensionless; default 0.5]
        #[arg(long, value_name = "TAU", value_parser = transmissivity)]
        tau: Option<f64>,
    },
}

impl Kind {
    fn common(&self) -> &Common {
        match self {
            Kind::Surface { common, .. }
            | Kind::TauScan { common, .. }
            | Kind::Scatter { common, .. }
            | Kind::Imbalance { common, .. }
            | Kind::Asymptote { common, .. }
            | Kind::ThresholdCurve { common, .. } => common,
        }
    }

    fn default_job(&self) -> SweepJob {
        match self {
            Kind::Surface { .. } => SweepJob::Surface {
                ns: Range::linear(0.0, 5.0, 51),
                nt: Range::linear(0.0, 5.0, 51),
                n2: 0.0,
                tau: 0.5,
            },
            Kind::TauScan { .. } => SweepJob::TauScan {
                family: Family::Thermal,
                total: 10.0,
                tau: Range::linear(0.0, 1.0, 101),
                n2: 0.0,
            },
            Kind::Scatter { .. } => SweepJob::Scatter {
                samples: 20_000,
                reference: ScatterReference::Vacuum,
                tau: None,
            },
            Kind::Imbalance { .. } => SweepJob::Imbalance {
                total: 5.0,
                points: 101,
                taus: vec![0.5],
                span: ImbalanceSpan::Full,
            },
            Kind::Asymptote { .. } => SweepJob::Asymptote {
                family: Family::SqueezedVacuum,
                total: Range::log(1.0, 1e4, 41),
                tau: 0.5,
                n2: 0.0,
            },
            Kind::ThresholdCurve { .. } => SweepJob::ThresholdCurve {
                n1: Range::log(1e-2, 1e4, 61),
                n2: vec![0.0, 0.1, 1.0],
                tau: 0.5,
            },
        }
    }

    /// Copies every flag that was given onto `job`; `false` when `job` is
    /// of another kind.
    fn apply(&self, job: &mut SweepJob) -> bool {
        match (self, job) {
            (
                Kind::Surface {
                    ns, nt, n2, tau, ..
                },
                SweepJob::Surface {
                    ns: j_ns,
                    nt: j_nt,
                    n2: j_n2,
                    tau: j_tau,
                },
            ) => {
                set(j_ns, ns);
                set(j_nt, nt);
                set(j_n2, n2);
                set(j_tau, tau);
            }
            (
                Kind::TauScan {
                    family,
                    total,
                    tau,
                    n2,
                    ..
                },
                SweepJob::TauScan {
                    family: j_family,
                    total: j_total,
                    tau: j_tau,
                    n2: j_n2,
                },
            ) => {
                set(j_family, family);
                set(j_total, total);
                set(j_tau, tau);
                set(j_n2, n2);
            }
            (
                Kind::Scatter {
                    samples, n2, tau, ..
                },
                SweepJob::Scatter {
                    samples: j_samples,
                    reference,
                    tau: j_tau,
                },
            ) => {
                set(j_samples, samples);
                set(reference, n2);
                if tau.is_some() {
                    *j_tau = *tau;
                }
            }
            (
                Kind::Imbalance {
                    total,
                    points,
                    tau,
                    span,
                    ..
                },
                SweepJob::Imbalance {
                    total: j_total,
                    points: j_points,
                    taus,
                    span: j_span,
                },
            ) => {
                set(j_total, total);
                set(j_points, points);
                set(taus, tau);
                set(j_span, span);
            }
            (
                Kind::Asymptote {
                    family,
                    total,
                    tau,
                    n2,
                    ..
                },
                SweepJob::Asymptote {
                    family: j_family,
                    total: j_total,
                    tau: j_tau,
                    n2: j_n2,
                },
            ) => {
                set(j_family, family);
                set(j_total, total);
                set(j_tau, tau);
                set(j_n2, n2);
            }
            (
                Kind::ThresholdCurve { n1, n2, tau, .. },
                SweepJob::ThresholdCurve {
                    n1: j_n1,
                    n2: j_n2,
                    tau: j_tau,
                },
            ) => {
                set(j_n1, n1);
                set(j_n2, n2);
                set(j_tau, tau);
            }
            _ => return false,
        }
        true
    }
}

fn set<T: Clone>(dst: &mut T, flag: &Option<T>) {
    if let Some(v) = flag {
        *dst = v.clone();
    }
}

/// Flag that sets the spec field named in a validation message.
fn flag_for(message: &str) -> &'static str {
    let field = message.split('`').nth(1).unwrap_or("");
    match field {
        "ns" => "--ns",
        "nt" => "--nt",
        "n1" => "--n1",
        "n2" => "--n2",
        "tau" | "taus" => "--tau",
        "N" => "--N",
        "samples" => "--samples",
        "points" => "--points",
        "seed" => "--seed",
        _ => "--spec",
    }
}

fn load(path: &Path) -> Result<SweepSpec, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Error(format!("--spec {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Error(format!("--spec {}: {e}", path.display())))
}

fn output_path(common: &Common, kind: &str) -> Result<PathBuf, Failure> {
    if let Some(p) = &common.out {
        return Ok(p.clone());
    }
    let ext = if common.json { "json" } else { "csv" };
    let dir = match std::env::var_os(OUT_DIR_ENV) {
        Some(d) => {
            let d = PathBuf::from(d);
            fs::create_dir_all(&d)
                .map_err(|e| Failure::Error(format!("{OUT_DIR_ENV}={}: {e}", d.display())))?;
            d
        }
        None => PathBuf::from("."),
    };
    Ok(dir.join(format!("{kind}.{ext}")))
}

pub fn run(a: &SweepArgs) -> Result<(), Failure> {
    let common = a.kind.common();
    let mut spec = match &common.spec {
        Some(p) => load(p)?,
        None => SweepSpec::new(a.kind.default_job()),
    };
    if !a.kind.apply(&mut spec.job) {
        return Err(Failure::Error(format!(
            "--spec describes a `{}` sweep, not the requested kind",
            spec.kind()
        )));
    }
    if common.seed.is_some() {
        spec.seed = common.seed;
    }
    spec.bits |= common.bits;
    spec.validate().map_err(|e| {
        let msg = e.to_string();
        Failure::Error(format!("{}: {msg}", flag_for(&msg)))
    })?;

    let table = sweeps::run(&spec)?;
    let path = output_path(common, spec.kind())?;
    let file = File::create(&path)
        .map_err(|e| Failure::Error(format!("--out {}: {e}", path.display())))?;
    let mut w = BufWriter::new(file);
    if common.json {
        table.write_json(&mut w)?;
        writeln!(w)?;
    } else {
        table.write_csv(&mut w)?;
    }
    w.flush()?;
    println!("{} rows -> {}", table.len(), path.display());
    Ok(())
}
