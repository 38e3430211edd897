//! End-to-end acceptance run. One line per criterion; exits nonzero if any
//! criterion fails.

use std::f64::consts::LN_2;
use std::time::{Duration, Instant};

use gaussmix::checks::{self, nonclassical_ensemble, worst_tau_star_offset};
use gaussmix::measures::{is_entangled, nonclassical_depth, Direction};
use gaussmix::sampling::{self, substream};
use gaussmix::sweeps::{
    self, discord_at, Family, ImbalanceSpan, Range, ScatterReference, SweepJob, SweepSpec,
};
use gaussmix::thresholds::{
    effective_nc, effective_nc_closed_form, effective_nc_from_depth, p_threshold_ns,
    sep_threshold_ns,
};
use gaussmix::{
    mix, mutual_information, ppt_eigenvalue, BeamSplitter, MeasureReport, SingleModeState,
};
use rand::Rng;

type Outcome = Result<(bool, String), gaussmix::Error>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn point_report(ns: f64, nt: f64, n2: f64, tau: f64) -> MeasureReport {
    MeasureReport::for_mixing(
        &SingleModeState::new(ns, nt).unwrap(),
        n2,
        &BeamSplitter::new(tau).unwrap(),
    )
    .unwrap()
}

fn lambda_tilde(ns: f64, nt: f64, n2: f64, tau: f64) -> f64 {
    let out = mix(
        &SingleModeState::new(ns, nt).unwrap(),
        n2,
        &BeamSplitter::new(tau).unwrap(),
    )
    .unwrap();
    ppt_eigenvalue(&out.invariants()).unwrap()
}

fn threshold_coincidence() -> Outcome {
    let mut rng = substream(101, 0);
    let (mut worst, mut flips) = (0.0_f64, 0);
    let n = 1000;
    for _ in 0..n {
        let nt = rng.random_range(0.0..100.0);
        let tau = loop {
            let t: f64 = rng.random();
            if t > 0.0 {
                break t;
            }
        };
        let ns = p_threshold_ns(nt);
        worst = worst.max((lambda_tilde(ns, nt, 0.0, tau) - 0.5).abs());
        let below = is_entangled(lambda_tilde(0.99 * ns, nt, 0.0, tau));
        let above = is_entangled(lambda_tilde(1.01 * ns, nt, 0.0, tau));
        if !below && above {
            flips += 1;
        }
    }
    Ok((
        worst <= 1e-9 && flips == n,
        format!("worst |λ̃₋ − 1/2| = {worst:.2e}, verdict flips at ±1% in {flips}/{n}"),
    ))
}

fn thermal_asymptote() -> Outcome {
    let d = point_report(0.0, 1e3, 0.0, 0.5).discord_1g2;
    let ratio = d / LN_2;
    Ok((
        (0.99..=1.01).contains(&ratio),
        format!("D = {d:.6}, D/ln 2 = {ratio:.5}"),
    ))
}

fn threshold_curve_limit() -> Outcome {
    let spec = SweepSpec::new(SweepJob::Asymptote {
        family: Family::Threshold,
        total: Range::log(1.0, 1e4, 13),
        tau: 0.5,
        n2: 0.0,
    });
    let t = sweeps::run(&spec)?;
    let d = t.reals("discord_1g2")?;
    let increasing = d.windows(2).all(|w| w[1] > w[0]);
    let (ns, nt) = Family::Threshold.photons(1e3);
    let d3 = discord_at(ns, nt, 0.0, 0.5, Direction::OneGivenTwo)?;
    let last = *d.last().unwrap();
    let step = (last - d3).abs();
    let candidates = [0.2067, 0.3616];
    let closest = candidates
        .iter()
        .copied()
        .min_by(|a, b| (a - last).abs().total_cmp(&(b - last).abs()))
        .unwrap();
    Ok((
        increasing && step < 0.01,
        format!(
            "D(10⁴) = {last:.5}, |D(10⁴) − D(10³)| = {step:.1e}; closest candidate {closest} (|Δ| = {:.1e}; other |Δ| = {:.1e})",
            (last - closest).abs(),
            candidates.iter().map(|c| (last - c).abs()).fold(0.0, f64::max)
        ),
    ))
}

fn squeezed_asymptotics() -> Outcome {
    let n: f64 = 1e4;
    let r = point_report(n, 0.0, 0.0, 0.5);
    let d_dev = (r.discord_1g2 - ((0.5 * n.sqrt()).ln() + 1.0)).abs() / r.discord_1g2;
    let l_dev = (r.ppt_lambda_minus - 0.25 / n.sqrt()).abs() / r.ppt_lambda_minus;
    Ok((
        d_dev <= 0.05 && l_dev <= 0.05,
        format!("relative deviation: D {d_dev:.2e}, λ̃₋ {l_dev:.2e}"),
    ))
}

fn scatter_structure() -> Outcome {
    let spec = SweepSpec::new(SweepJob::Scatter {
        samples: 20_000,
        reference: ScatterReference::Vacuum,
        tau: None,
    })
    .with_seed(42);
    let t = sweeps::run(&spec)?;
    let d = t.reals("discord_1g2")?;
    let l = t.reals("ppt_lambda_minus")?;
    let violations = d
        .iter()
        .zip(&l)
        .filter(|(d, l)| **l >= 0.5 && **d > 1.0 + 1e-9)
        .count();
    let strong: Vec<(f64, f64)> = d
        .iter()
        .zip(&l)
        .filter(|(d, _)| **d >= 1.2)
        .map(|(d, l)| (*d, *l))
        .collect();
    let inside = strong
        .iter()
        .filter(|(d, l)| *l >= (-d).exp() / 4.0 * 0.85 && *l <= (1.0 - d).exp() / 8.0 * 1.15)
        .count();
    let frac = inside as f64 / strong.len().max(1) as f64;
    Ok((
        t.len() == 20_000 && violations == 0 && !strong.is_empty() && frac >= 0.99,
        format!(
            "{} rows, {violations} separable rows with D > 1, {inside}/{} rows with D ≥ 1.2 inside the band",
            t.len(),
            strong.len()
        ),
    ))
}

fn transparency() -> Outcome {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for n in [0.0, 1e-3, 0.1, 1.0, 7.5, 100.0] {
        for k in 0..=20 {
            let tau = k as f64 / 20.0;
            let th = gaussmix::cm_thermal(n)?;
            let out = BeamSplitter::new(tau)?.apply(&th, &th);
            let inv = out.invariants();
            let d = gaussmix::gaussian_discord(&inv, Direction::OneGivenTwo)?;
            let im = mutual_information(&inv)?;
            worst = worst
                .max(out.block_c().abs().max())
                .max(d.abs())
                .max(im.abs());
            count += 1;
        }
    }
    Ok((
        worst <= 1e-12,
        format!("worst of |c±|, D, I_M over {count} points = {worst:.2e}"),
    ))
}

fn imbalance_monotonicity() -> Outcome {
    let taus = vec![0.5, 0.8, 0.99];
    let spec = SweepSpec::new(SweepJob::Imbalance {
        total: 5.0,
        points: 101,
        taus: taus.clone(),
        span: ImbalanceSpan::Nonnegative,
    });
    let t = sweeps::run(&spec)?;
    let d = t.reals("discord_1g2")?;
    let mut ok = true;
    let mut notes = Vec::new();
    for (k, tau) in taus.iter().enumerate() {
        let curve = &d[k * 101..(k + 1) * 101];
        let drops = curve.windows(2).filter(|w| w[1] < w[0]).count();
        ok &= drops == 0 && curve[0].abs() <= 1e-12;
        notes.push(format!(
            "τ={tau}: D(0)={:.1e}, D(N)={:.4}, drops {drops}",
            curve[0], curve[100]
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn effective_nc_identity() -> Outcome {
    let states = nonclassical_ensemble(7, 1000);
    let mut worst_depth = 0.0_f64;
    let mut worst_closed = 0.0_f64;
    for st in &states {
        let e = effective_nc(st)?.value;
        worst_depth = worst_depth.max((e - effective_nc_from_depth(nonclassical_depth(st))).abs());
        worst_closed = worst_closed.max((e - effective_nc_closed_form(st)).abs());
    }
    let tau_off = worst_tau_star_offset(&states)?;
    Ok((
        worst_depth <= 1e-6 && worst_closed <= 1e-6 && tau_off <= 1e-4,
        format!(
            "{} states: vs depth form {worst_depth:.2e}, vs closed form {worst_closed:.2e}, worst |τ* − 1/2| = {tau_off:.2e}",
            states.len()
        ),
    ))
}

fn oracle_equivalence() -> Outcome {
    let r = checks::run_check("emin-oracle", Some(10_000), checks::DEFAULT_SEED)?;
    Ok((
        r.passed && r.worst_residual <= 1e-6,
        format!(
            "{} states, both measured modes: worst |closed − oracle| = {:.2e}",
            r.samples, r.worst_residual
        ),
    ))
}

fn balanced_symmetry() -> Outcome {
    let xs = sampling::draw_many(11, &sampling::SamplingLaw::thermal_reference(), 1000);
    let mut worst_bal = 0.0_f64;
    let mut worst_swap = 0.0_f64;
    for (i, s) in xs.iter().enumerate() {
        let r = point_report(s.n_s, s.n_t, s.n2, 0.5);
        worst_bal = worst_bal.max((r.discord_1g2 - r.discord_2g1).abs());
        if i % 10 == 0 {
            for k in 0..=20 {
                let tau = k as f64 / 20.0;
                let a = point_report(s.n_s, s.n_t, s.n2, tau).discord_2g1;
                let b = point_report(s.n_s, s.n_t, s.n2, 1.0 - tau).discord_1g2;
                worst_swap = worst_swap.max((a - b).abs());
            }
        }
    }
    Ok((
        worst_bal <= 1e-10 && worst_swap <= 1e-10,
        format!("|D₁|₂ − D₂|₁| at τ=1/2: {worst_bal:.2e}; |D₂|₁(τ) − D₁|₂(1−τ)|: {worst_swap:.2e}"),
    ))
}

fn thermal_threshold_reductions() -> Outcome {
    let mut rng = substream(13, 0);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let n = sampling::log_uniform(&mut rng, 1e-3, 1e2);
        let vac = p_threshold_ns(n);
        let sq = n * n / (1.0 + 2.0 * n);
        for k in 1..10 {
            let tau = k as f64 / 10.0;
            worst = worst.max((sep_threshold_ns(n, 0.0, tau)? - vac).abs());
            worst = worst.max((sep_threshold_ns(0.0, n, tau)? - sq).abs());
        }
    }
    Ok((
        worst <= 1e-12,
        format!("worst deviation over 200 photon numbers × 9 τ values: {worst:.2e}"),
    ))
}

fn determinism() -> Outcome {
    let specs = [
        SweepSpec::new(SweepJob::Surface {
            ns: Range::log(1e-2, 10.0, 8),
            nt: Range::linear(0.0, 5.0, 6),
            n2: 0.2,
            tau: 0.4,
        }),
        SweepSpec::new(SweepJob::TauScan {
            family: Family::Threshold,
            total: 10.0,
            tau: Range::linear(0.0, 1.0, 21),
            n2: 0.0,
        }),
        SweepSpec::new(SweepJob::Scatter {
            samples: 2000,
            reference: ScatterReference::Random,
            tau: None,
        })
        .with_seed(42),
        SweepSpec::new(SweepJob::Imbalance {
            total: 5.0,
            points: 101,
            taus: vec![0.5, 0.8, 0.99],
            span: ImbalanceSpan::Full,
        }),
        SweepSpec::new(SweepJob::Asymptote {
            family: Family::SqueezedVacuum,
            total: Range::log(1.0, 1e4, 9),
            tau: 0.5,
            n2: 0.0,
        }),
        SweepSpec::new(SweepJob::ThresholdCurve {
            n1: Range::log(1e-2, 1e3, 16),
            n2: vec![0.0, 0.1, 1.0],
            tau: 0.5,
        }),
    ];
    let mut identical = 0;
    for spec in &specs {
        let a = sweeps::run(spec)?.to_csv_string()?;
        let b = sweeps::run(spec)?.to_csv_string()?;
        if a == b {
            identical += 1;
        }
    }
    Ok((
        identical == specs.len(),
        format!(
            "{identical}/{} sweep kinds byte-identical across two runs",
            specs.len()
        ),
    ))
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "threshold coincidence (vacuum reference)",
            limit: Duration::from_secs(1),
            run: threshold_coincidence,
        },
        Criterion {
            id: 2,
            name: "thermal discord asymptote",
            limit: Duration::from_secs(1),
            run: thermal_asymptote,
        },
        Criterion {
            id: 3,
            name: "threshold-curve discord limit",
            limit: Duration::from_secs(5),
            run: threshold_curve_limit,
        },
        Criterion {
            id: 4,
            name: "squeezed-vacuum asymptotics",
            limit: Duration::from_secs(1),
            run: squeezed_asymptotics,
        },
        Criterion {
            id: 5,
            name: "scatter structure",
            limit: Duration::from_secs(30),
            run: scatter_structure,
        },
        Criterion {
            id: 6,
            name: "transparency",
            limit: Duration::from_secs(1),
            run: transparency,
        },
        Criterion {
            id: 7,
            name: "imbalance monotonicity",
            limit: Duration::from_secs(1),
            run: imbalance_monotonicity,
        },
        Criterion {
            id: 8,
            name: "effective nonclassicality identity",
            limit: Duration::from_secs(60),
            run: effective_nc_identity,
        },
        Criterion {
            id: 9,
            name: "oracle equivalence",
            limit: Duration::from_secs(120),
            run: oracle_equivalence,
        },
        Criterion {
            id: 10,
            name: "balanced splitter discord symmetry",
            limit: Duration::from_secs(5),
            run: balanced_symmetry,
        },
        Criterion {
            id: 11,
            name: "thermal threshold reductions",
            limit: Duration::from_secs(1),
            run: thermal_threshold_reductions,
        },
        Criterion {
            id: 12,
            name: "sweep determinism",
            limit: Duration::MAX,
            run: determinism,
        },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = elapsed <= c.limit;
        let pass = ok && in_time;
        let timing = if c.limit == Duration::MAX {
            format!("{:.2} s", elapsed.as_secs_f64())
        } else {
            format!("{:.2} s of {} s", elapsed.as_secs_f64(), c.limit.as_secs())
        };
        println!(
            "{} {:>2} {}: {detail} [{timing}]",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name
        );
        if !pass {
            failed.push(c.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
