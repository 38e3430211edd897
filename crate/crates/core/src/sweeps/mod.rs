//! Sweep engines. Each turns a [`SweepSpec`] into a [`SweepTable`], one row
//! per evaluated point. Points are evaluated in parallel and collected by
//! index, so the output does not depend on scheduling.

mod spec;
mod table;

pub use spec::{
    Family, ImbalanceSpan, Range, Scale, ScatterReference, SweepJob, SweepSpec, SPEC_VERSION,
};
pub use table::{Cell, SweepTable};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{BeamSplitter, SingleModeState, VACUUM_VARIANCE};
use crate::measures::{p_classical, Direction, MeasureReport};
use crate::optimize::{bisect, golden_section_min};
use crate::sampling::{self, ReferenceLaw, SamplingLaw, TauLaw};
use crate::thresholds::{p_threshold_ns, sep_threshold_ns};

/// `|λ̃₋ − 1/2|` below which a row is flagged `at_threshold`.
pub const AT_THRESHOLD_TOL: f64 = 1e-9;

/// Columns shared by every kind, after the kind-specific leading columns.
pub const POINT_COLUMNS: [&str; 15] = [
    "n_s",
    "n_t",
    "n2",
    "tau",
    "n1",
    "n_total",
    "discord_1g2",
    "discord_2g1",
    "mutual_info",
    "classical_corr_1g2",
    "ppt_lambda_minus",
    "log_negativity",
    "entangled",
    "p_classical",
    "at_threshold",
];

#[derive(Clone, Copy, Debug)]
struct Point {
    n_s: f64,
    n_t: f64,
    n2: f64,
    tau: f64,
}

impl Point {
    fn new(n_s: f64, n_t: f64, n2: f64, tau: f64) -> Self {
        Self { n_s, n_t, n2, tau }
    }

    fn report(&self) -> Result<MeasureReport> {
        MeasureReport::for_mixing(
            &SingleModeState::new(self.n_s, self.n_t)?,
            self.n2,
            &BeamSplitter::new(self.tau)?,
        )
    }

    fn cells(&self, bits: bool) -> Result<Vec<Cell>> {
        let state = SingleModeState::new(self.n_s, self.n_t)?;
        let r = self.report()?;
        let r = if bits { r.in_bits() } else { r };
        let n1 = state.total_photons();
        Ok(vec![
            Cell::Real(self.n_s),
            Cell::Real(self.n_t),
            Cell::Real(self.n2),
            Cell::Real(self.tau),
            Cell::Real(n1),
            Cell::Real(n1 + self.n2),
            Cell::Real(r.discord_1g2),
            Cell::Real(r.discord_2g1),
            Cell::Real(r.mutual_info),
            Cell::Real(r.classical_corr_1g2),
            Cell::Real(r.ppt_lambda_minus),
            Cell::Real(r.log_negativity),
            Cell::Flag(r.entangled),
            Cell::Flag(p_classical(&state)),
            Cell::Flag((r.ppt_lambda_minus - VACUUM_VARIANCE).abs() <= AT_THRESHOLD_TOL),
        ])
    }
}

fn nan_point_cells(n2: f64, tau: f64) -> Vec<Cell> {
    let mut cells = vec![Cell::Real(f64::NAN); POINT_COLUMNS.len()];
    cells[2] = Cell::Real(n2);
    cells[3] = Cell::Real(tau);
    for c in &mut cells[12..] {
        *c = Cell::Flag(false);
    }
    cells
}

/// Leading cells followed by the point columns, evaluated in parallel.
fn evaluate(points: Vec<(Vec<Cell>, Point)>, bits: bool) -> Result<Vec<Vec<Cell>>> {
    points
        .into_par_iter()
        .map(|(mut lead, p)| {
            lead.extend(p.cells(bits)?);
            Ok(lead)
        })
        .collect()
}

fn columns(lead: &[&'static str], tail: &[&'static str]) -> Vec<&'static str> {
    lead.iter()
        .chain(POINT_COLUMNS.iter())
        .chain(tail)
        .copied()
        .collect()
}

/// Runs any sweep after validating its spec.
pub fn run(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    match spec.job {
        SweepJob::Surface { .. } => run_surface(spec),
        SweepJob::TauScan { .. } => run_tau_scan(spec),
        SweepJob::Scatter { .. } => run_scatter(spec),
        SweepJob::Imbalance { .. } => run_imbalance(spec),
        SweepJob::Asymptote { .. } => run_asymptote(spec),
        SweepJob::ThresholdCurve { .. } => run_threshold_curve(spec),
    }
}

fn wrong_kind(spec: &SweepSpec, expected: &str) -> Error {
    Error::InvalidSpec(format!(
        "`kind`: expected {expected}, found {}",
        spec.kind()
    ))
}

/// `n_s` minimizing `D_{1|2}` at fixed `n_t`, searched on the `ns` axis
/// (in log space for a log axis).
fn min_discord_ns(ns: &Range, nt: f64, n2: f64, tau: f64) -> Result<f64> {
    let log = ns.scale == Scale::Log;
    let (lo, hi) = if log {
        (ns.min.ln(), ns.max.ln())
    } else {
        (ns.min, ns.max)
    };
    let to_ns = |x: f64| if log { x.exp() } else { x };
    let discord = |x: f64| {
        Point::new(to_ns(x), nt, n2, tau)
            .report()
            .map(|r| r.discord_1g2)
            .unwrap_or(f64::NAN)
    };
    const SCAN: usize = 65;
    let step = (hi - lo) / (SCAN - 1) as f64;
    let best = (0..SCAN)
        .map(|i| (i, discord(lo + i as f64 * step)))
        .fold(
            (0, f64::INFINITY),
            |a, (i, v)| if v < a.1 { (i, v) } else { a },
        )
        .0;
    let a = lo + (best.max(1) - 1) as f64 * step;
    let b = (lo + (best + 1) as f64 * step).min(hi);
    let m = golden_section_min(discord, a, b, 1e-10 * (hi - lo).abs().max(1.0))?;
    Ok(to_ns(m.x))
}

pub fn run_surface(spec: &SweepSpec) -> Result<SweepTable> {
    let SweepJob::Surface { ns, nt, n2, tau } = &spec.job else {
        return Err(wrong_kind(spec, "surface"));
    };
    let (n2, tau) = (*n2, *tau);
    let (nss, nts) = (ns.values(), nt.values());
    let mut points = Vec::new();
    for &t in &nts {
        for &s in &nss {
            points.push((vec![Cell::Text("grid")], Point::new(s, t, n2, tau)));
        }
    }
    for &t in &nts {
        points.push((vec![Cell::Text("thermal")], Point::new(0.0, t, n2, tau)));
    }
    for &s in &nss {
        points.push((
            vec![Cell::Text("squeezed_vacuum")],
            Point::new(s, 0.0, n2, tau),
        ));
    }
    for &t in &nts {
        points.push((
            vec![Cell::Text("p_threshold")],
            Point::new(p_threshold_ns(t), t, n2, tau),
        ));
    }
    let minima: Vec<f64> = nts
        .par_iter()
        .map(|&t| min_discord_ns(ns, t, n2, tau))
        .collect::<Result<_>>()?;
    for (&t, &s) in nts.iter().zip(&minima) {
        points.push((vec![Cell::Text("min_discord")], Point::new(s, t, n2, tau)));
    }
    Ok(SweepTable {
        spec: spec.clone(),
        columns: columns(&["curve"], &[]),
        rows: evaluate(points, spec.bits)?,
    })
}

pub fn run_tau_scan(spec: &SweepSpec) -> Result<SweepTable> {
    let SweepJob::TauScan {
        family,
        total,
        tau,
        n2,
    } = &spec.job
    else {
        return Err(wrong_kind(spec, "tau_scan"));
    };
    let (s, t) = family.photons(*total);
    let points = tau
        .values()
        .into_iter()
        .map(|x| (vec![Cell::Text(family.name())], Point::new(s, t, *n2, x)))
        .collect();
    Ok(SweepTable {
        spec: spec.clone(),
        columns: columns(&["family"], &[]),
        rows: evaluate(points, spec.bits)?,
    })
}

/// Sampling law of a scatter sweep: `n_s, n_t` (and `n₂` for a random
/// reference) log-uniform on `[10⁻³, 10²]`.
pub fn scatter_law(reference: ScatterReference, tau: Option<f64>) -> SamplingLaw {
    let base = SamplingLaw::default();
    SamplingLaw {
        reference: match reference {
            ScatterReference::Vacuum => ReferenceLaw::Vacuum,
            ScatterReference::Random => ReferenceLaw::LogUniform {
                min: base.ns.0,
                max: base.ns.1,
            },
        },
        tau: tau.map_or(TauLaw::Uniform, TauLaw::Fixed),
        ..base
    }
}

pub fn run_scatter(spec: &SweepSpec) -> Result<SweepTable> {
    let SweepJob::Scatter {
        samples,
        reference,
        tau,
    } = &spec.job
    else {
        return Err(wrong_kind(spec, "scatter"));
    };
    let seed = spec
        .seed
        .ok_or_else(|| Error::InvalidSpec("`seed`: scatter sweeps need an explicit seed".into()))?;
    let law = scatter_law(*reference, *tau);
    let points = sampling::draw_many(seed, &law, *samples)
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            (
                vec![Cell::Int(i as u64)],
                Point::new(m.n_s, m.n_t, m.n2, m.tau),
            )
        })
        .collect();
    Ok(SweepTable {
        spec: spec.clone(),
        columns: columns(&["index"], &[]),
        rows: evaluate(points, spec.bits)?,
    })
}

pub fn run_imbalance(spec: &SweepSpec) -> Result<SweepTable> {
    let SweepJob::Imbalance {
        total,
        points: count,
        taus,
        span,
    } = &spec.job
    else {
        return Err(wrong_kind(spec, "imbalance"));
    };
    let n = *total;
    let last = (*count - 1) as f64;
    let mut points = Vec::new();
    for &tau in taus {
        for i in 0..*count {
            let d = match span {
                ImbalanceSpan::Full => -n + 2.0 * n * (i as f64 / last),
                ImbalanceSpan::Nonnegative => n * (i as f64 / last),
            };
            points.push((
                vec![Cell::Real(d)],
                Point::new(0.0, 0.5 * (n + d), 0.5 * (n - d), tau),
            ));
        }
    }
    Ok(SweepTable {
        spec: spec.clone(),
        columns: columns(&["d"], &[]),
        rows: evaluate(points, spec.bits)?,
    })
}

/// Leading-order large-`N` forms `(D, λ̃₋)` for a balanced splitter and a
/// vacuum reference; NaN where none is known.
pub fn leading_order(family: Family, n: f64) -> (f64, f64) {
    match family {
        Family::Thermal => (std::f64::consts::LN_2, f64::NAN),
        Family::SqueezedVacuum => ((0.5 * n.sqrt()).ln() + 1.0, 0.25 / n.sqrt()),
        Family::Threshold => (f64::NAN, f64::NAN),
    }
}

pub fn run_asymptote(spec: &SweepSpec) -> Result<SweepTable> {
    let SweepJob::Asymptote {
        family,
        total,
        tau,
        n2,
    } = &spec.job
    else {
        return Err(wrong_kind(spec, "asymptote"));
    };
    let known = *tau == 0.5 && *n2 == 0.0;
    let scale = if spec.bits {
        std::f64::consts::LN_2
    } else {
        1.0
    };
    let rows = total
        .values()
        .into_par_iter()
        .map(|n| {
            let (s, t) = family.photons(n);
            let p = Point::new(s, t, *n2, *tau);
            let r = p.report()?;
            let (ld, ll) = if known {
                leading_order(*family, n)
            } else {
                (f64::NAN, f64::NAN)
            };
            let mut row = vec![Cell::Text(family.name()), Cell::Real(n)];
            row.extend(p.cells(spec.bits)?);
            row.extend([
                Cell::Real(ld / scale),
                Cell::Real((r.discord_1g2 - ld).abs() / r.discord_1g2),
                Cell::Real(ll),
                Cell::Real((r.ppt_lambda_minus - ll).abs() / r.ppt_lambda_minus),
            ]);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        spec: spec.clone(),
        columns: columns(
            &["family", "N"],
            &[
                "leading_discord",
                "discord_rel_dev",
                "leading_lambda",
                "lambda_rel_dev",
            ],
        ),
        rows,
    })
}

/// Thermal photons `n_t` such that the separability threshold state carries
/// `n1` photons in mode 1; `None` when even `n_t = 0` needs more.
pub fn threshold_nt_at_energy(n1: f64, n2: f64, tau: f64) -> Result<Option<f64>> {
    let energy =
        |nt: f64| -> Result<f64> { Ok(nt + (1.0 + 2.0 * nt) * sep_threshold_ns(nt, n2, tau)?) };
    let e0 = energy(0.0)?;
    if e0 > n1 {
        return Ok(None);
    }
    if e0 == n1 {
        return Ok(Some(0.0));
    }
    // energy(n1) ≥ n1, so [0, n1] brackets the root
    let mut err = None;
    let nt = bisect(
        |nt| match energy(nt) {
            Ok(e) => e - n1,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        },
        0.0,
        n1,
        0.0,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(Some(nt)),
    }
}

pub fn run_threshold_curve(spec: &SweepSpec) -> Result<SweepTable> {
    let SweepJob::ThresholdCurve { n1, n2, tau } = &spec.job else {
        return Err(wrong_kind(spec, "threshold_curve"));
    };
    let tau = *tau;
    let grid: Vec<(f64, f64)> = n2
        .iter()
        .flat_map(|&r| n1.values().into_iter().map(move |e| (e, r)))
        .collect();
    let rows = grid
        .into_par_iter()
        .map(|(energy, r)| {
            let mut row = vec![Cell::Real(energy)];
            match threshold_nt_at_energy(energy, r, tau)? {
                Some(nt) => {
                    let ns = sep_threshold_ns(nt, r, tau)?;
                    let frac = if energy > 0.0 { ns / energy } else { f64::NAN };
                    row.push(Cell::Real(frac));
                    row.extend(Point::new(ns, nt, r, tau).cells(spec.bits)?);
                }
                None => {
                    row.push(Cell::Real(f64::NAN));
                    row.extend(nan_point_cells(r, tau));
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(SweepTable {
        spec: spec.clone(),
        columns: columns(&["n1_target", "squeezed_fraction"], &[]),
        rows,
    })
}

/// `D_{1|2}` or `D_{2|1}` of one configuration, in nats.
pub fn discord_at(n_s: f64, n_t: f64, n2: f64, tau: f64, direction: Direction) -> Result<f64> {
    let r = Point::new(n_s, n_t, n2, tau).report()?;
    Ok(match direction {
        Direction::OneGivenTwo => r.discord_1g2,
        Direction::TwoGivenOne => r.discord_2g1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(n2: f64) -> SweepSpec {
        SweepSpec::new(SweepJob::Surface {
            ns: Range::linear(0.0, 2.0, 5),
            nt: Range::linear(0.0, 2.0, 5),
            n2,
            tau: 0.5,
        })
    }

    #[test]
    fn surface_has_grid_and_curves() {
        let t = run(&surface(0.0)).unwrap();
        assert_eq!(t.len(), 25 + 5 + 5 + 5 + 5);
        assert_eq!(t.columns.len(), 1 + POINT_COLUMNS.len());
        let grid = t.filter("curve", "grid").unwrap();
        assert!(grid.reals("discord_1g2").unwrap()[0].abs() <= 1e-12);
        let p = t.filter("curve", "p_threshold").unwrap();
        assert!(p.flags("at_threshold").unwrap().iter().all(|&b| b));
    }

    #[test]
    fn minimum_discord_is_not_above_the_grid() {
        let t = run(&surface(0.0)).unwrap();
        let grid = t.filter("curve", "grid").unwrap();
        let mins = t
            .filter("curve", "min_discord")
            .unwrap()
            .reals("discord_1g2")
            .unwrap();
        let d = grid.reals("discord_1g2").unwrap();
        for (k, m) in mins.iter().enumerate() {
            let row_min = d[k * 5..(k + 1) * 5]
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            assert!(*m <= row_min + 1e-12);
        }
    }

    #[test]
    fn tau_scan_endpoints_vanish() {
        let spec = SweepSpec::new(SweepJob::TauScan {
            family: Family::Thermal,
            total: 10.0,
            tau: Range::linear(0.0, 1.0, 11),
            n2: 0.0,
        });
        let t = run(&spec).unwrap();
        let d = t.reals("discord_1g2").unwrap();
        assert_eq!(d[0], 0.0);
        assert_eq!(d[10], 0.0);
        assert!(d[5] > 0.0);
    }

    #[test]
    fn scatter_is_reproducible() {
        let spec = SweepSpec::new(SweepJob::Scatter {
            samples: 50,
            reference: ScatterReference::Random,
            tau: None,
        })
        .with_seed(9);
        let a = run(&spec).unwrap().to_csv_string().unwrap();
        let b = run(&spec).unwrap().to_csv_string().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 52);
        assert!(a.starts_with("# {"));
    }

    #[test]
    fn imbalance_transparency_at_zero() {
        let spec = SweepSpec::new(SweepJob::Imbalance {
            total: 5.0,
            points: 11,
            taus: vec![0.3],
            span: ImbalanceSpan::Full,
        });
        let t = run(&spec).unwrap();
        let d = t.reals("d").unwrap();
        assert_eq!(d[5], 0.0);
        assert!(t.reals("discord_1g2").unwrap()[5].abs() <= 1e-12);
    }

    #[test]
    fn threshold_curve_matches_p_threshold_without_reference() {
        let spec = SweepSpec::new(SweepJob::ThresholdCurve {
            n1: Range::log(0.1, 100.0, 7),
            n2: vec![0.0],
            tau: 0.3,
        });
        let t = run(&spec).unwrap();
        for (ns, nt) in t.reals("n_s").unwrap().iter().zip(t.reals("n_t").unwrap()) {
            assert!((ns - p_threshold_ns(nt)).abs() <= 1e-10 * ns.max(1.0));
        }
        assert!(t.flags("at_threshold").unwrap().iter().all(|&b| b));
    }

    #[test]
    fn unreachable_threshold_points_are_nan() {
        let spec = SweepSpec::new(SweepJob::ThresholdCurve {
            n1: Range::linear(0.0, 0.1, 2),
            n2: vec![1.0],
            tau: 0.5,
        });
        let t = run(&spec).unwrap();
        assert!(t.reals("n_s").unwrap().iter().all(|x| x.is_nan()));
    }

    #[test]
    fn bits_rescale_discord() {
        let mut spec = surface(0.3);
        let nats = run(&spec).unwrap().reals("discord_1g2").unwrap();
        spec.bits = true;
        let bits = run(&spec).unwrap().reals("discord_1g2").unwrap();
        for (n, b) in nats.iter().zip(bits) {
            assert!((n / std::f64::consts::LN_2 - b).abs() <= 1e-15 * n.max(1.0));
        }
    }
}
