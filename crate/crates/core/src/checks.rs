//! Cross-checks between closed forms and independent numerical routes.
//!
//! Each check draws a seeded ensemble, evaluates one identity or bound on
//! every sample and reports the worst residual against its tolerance. The
//! `verify` command of the CLI runs these; the integration tests do too.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{
    cm_thermal, mix, ppt_eigenvalue, BeamSplitter, CovMat4, Invariants, SingleModeState,
};
use crate::measures::{
    emin_closed_form, emin_oracle, gaussian_discord, mutual_information, nonclassical_depth,
    nonclassical_depth_from_squeezing, Direction, Party,
};
use crate::sampling::{self, log_uniform, MixingSample, SamplingLaw, TauLaw};
use crate::thresholds::{
    effective_nc, effective_nc_at_tau, effective_nc_closed_form, effective_nc_from_depth,
    p_threshold_ns, p_threshold_nt, sep_threshold_ns,
};

pub const DEFAULT_SEED: u64 = 20_150_601;

/// Outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub samples: usize,
    pub worst_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckReport {
    fn from_residuals(name: &'static str, tolerance: f64, residuals: &[f64]) -> Self {
        let worst = if residuals.iter().any(|r| r.is_nan()) {
            f64::NAN
        } else {
            residuals.iter().copied().fold(0.0, f64::max)
        };
        Self {
            name,
            samples: residuals.len(),
            worst_residual: worst,
            tolerance,
            passed: !worst.is_nan() && worst <= tolerance,
        }
    }
}

type CheckFn = fn(usize, u64) -> Result<CheckReport>;

/// Every check: name, default sample count, implementation.
pub const CHECKS: &[(&str, usize, CheckFn)] = &[
    ("congruence", 1000, congruence),
    ("spectrum-preservation", 1000, spectrum_preservation),
    ("energy-conservation", 1000, energy_conservation),
    ("tau-exchange", 1000, tau_exchange),
    ("purity", 1000, purity),
    ("emin-oracle", 10_000, emin_oracle_check),
    ("emin-general", 500, emin_general),
    ("discord-bounds", 10_000, discord_bounds),
    ("separable-discord", 10_000, separable_discord),
    ("entanglement-vs-p", 10_000, entanglement_vs_p),
    ("depth-agreement", 10_000, depth_agreement),
    ("threshold-correctness", 1000, threshold_correctness),
    ("tau-independence", 200, tau_independence),
    ("sep-monotonicity", 200, sep_monotonicity),
    ("inverse-pair", 1001, inverse_pair),
    ("lambda-monotone-n2", 300, lambda_monotone_n2),
    ("e-tau-unimodal", 100, e_tau_unimodal),
    ("depth-identity", 1000, depth_identity),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.0)
}

/// Runs the named check with `samples` (or its default) and `seed`.
pub fn run_check(name: &str, samples: Option<usize>, seed: u64) -> Result<CheckReport> {
    let (_, default, f) = CHECKS
        .iter()
        .find(|c| c.0 == name)
        .ok_or_else(|| Error::InvalidSpec(format!("unknown check `{name}`")))?;
    f(samples.unwrap_or(*default).max(1), seed)
}

pub fn run_all(samples: Option<usize>, seed: u64) -> Vec<Result<CheckReport>> {
    CHECKS
        .iter()
        .map(|(name, _, _)| run_check(name, samples, seed))
        .collect()
}

fn ensemble(seed: u64, law: &SamplingLaw, n: usize) -> Vec<MixingSample> {
    sampling::draw_many(seed, law, n)
}

fn output(s: &MixingSample) -> Result<CovMat4> {
    mix(
        &SingleModeState::new(s.n_s, s.n_t)?,
        s.n2,
        &BeamSplitter::new(s.tau)?,
    )
}

/// Output covariance written entry by entry: `a±`, `b±`, `c±`.
pub fn closed_form_output(s: &MixingSample) -> Matrix4<f64> {
    let st = SingleModeState::new(s.n_s, s.n_t).expect("valid sample");
    let (n1, delta, t) = (st.total_photons(), st.delta(), s.tau);
    let v2 = 0.5 + s.n2;
    let (vp, vm) = (0.5 + n1 + delta, st.min_variance());
    let a = |v: f64| v2 * (1.0 - t) + v * t;
    let b = |v: f64| v2 * t + v * (1.0 - t);
    let c = |v: f64| (v2 - v) * (t * (1.0 - t)).sqrt();
    Matrix4::new(
        a(vp),
        0.0,
        c(vp),
        0.0, //
        0.0,
        a(vm),
        0.0,
        c(vm), //
        c(vp),
        0.0,
        b(vp),
        0.0, //
        0.0,
        c(vm),
        0.0,
        b(vm),
    )
}

fn par_residuals<F>(samples: &[MixingSample], f: F) -> Result<Vec<f64>>
where
    F: Fn(&MixingSample) -> Result<f64> + Sync + Send,
{
    samples.par_iter().map(f).collect()
}

fn congruence(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let m = *output(s)?.matrix();
        let cf = closed_form_output(s);
        Ok((m - cf).abs().max() / m.abs().max().max(1.0))
    })?;
    Ok(CheckReport::from_residuals("congruence", 1e-12, &r))
}

fn spectrum_preservation(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let (lp, lm) = output(s)?.invariants().symplectic_eigenvalues()?;
        let mut local = [0.5 + s.n_t, 0.5 + s.n2];
        local.sort_by(|a, b| b.total_cmp(a));
        Ok(((lp - local[0]).abs() / local[0]).max((lm - local[1]).abs() / local[1]))
    })?;
    Ok(CheckReport::from_residuals(
        "spectrum-preservation",
        1e-10,
        &r,
    ))
}

fn energy_conservation(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let st = SingleModeState::new(s.n_s, s.n_t)?;
        let input = st.covariance().trace() + cm_thermal(s.n2)?.trace();
        Ok((output(s)?.trace() - input).abs() / input.max(1.0))
    })?;
    Ok(CheckReport::from_residuals(
        "energy-conservation",
        1e-12,
        &r,
    ))
}

fn tau_exchange(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let a = output(s)?.invariants();
        let b = output(&MixingSample {
            tau: 1.0 - s.tau,
            ..*s
        })?
        .invariants();
        let rel = |x: f64, y: f64| (x - y).abs() / x.abs().max(y.abs()).max(1.0);
        Ok(rel(a.i1, b.i2)
            .max(rel(a.i2, b.i1))
            .max(rel(a.i3, b.i3))
            .max(rel(a.i4, b.i4)))
    })?;
    Ok(CheckReport::from_residuals("tau-exchange", 1e-10, &r))
}

fn purity(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::default(), n);
    let r = par_residuals(&xs, |s| {
        let st = SingleModeState::new(s.n_s, s.n_t)?;
        let from_cm = st.covariance().purity();
        let direct = 1.0 / (1.0 + 2.0 * s.n_t);
        Ok((from_cm - st.purity()).abs().max((from_cm - direct).abs()))
    })?;
    Ok(CheckReport::from_residuals("purity", 1e-12, &r))
}

fn emin_oracle_check(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let cm = output(s)?;
        let inv = cm.invariants();
        let second = (emin_closed_form(&inv) - emin_oracle(&cm, Party::Second)?).abs();
        let first = (emin_closed_form(&inv.swapped()) - emin_oracle(&cm, Party::First)?).abs();
        Ok(second.max(first))
    })?;
    Ok(CheckReport::from_residuals("emin-oracle", 1e-6, &r))
}

fn local_symplectic<R: Rng>(rng: &mut R) -> Matrix2<f64> {
    let rot = |t: f64| {
        let (s, c) = t.sin_cos();
        Matrix2::new(c, -s, s, c)
    };
    let sq = rng.random_range(-1.0..1.0_f64);
    rot(rng.random_range(0.0..PI))
        * Matrix2::new(sq.exp(), 0.0, 0.0, (-sq).exp())
        * rot(rng.random_range(0.0..PI))
}

/// A physical two-mode covariance matrix that is not in the beam-splitter
/// family: a mixing output dressed with random local symplectic maps.
pub fn random_physical_cm<R: Rng>(rng: &mut R) -> Result<CovMat4> {
    let law = SamplingLaw {
        ns: (1e-3, 10.0),
        nt: (1e-3, 10.0),
        reference: sampling::ReferenceLaw::LogUniform {
            min: 1e-3,
            max: 10.0,
        },
        tau: TauLaw::Uniform,
    };
    let s = sampling::draw(rng, &law);
    let cm = output(&s)?;
    let mut local = Matrix4::zeros();
    local
        .fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&local_symplectic(rng));
    local
        .fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&local_symplectic(rng));
    Ok(cm.transform(&local))
}

fn emin_general(n: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = sampling::substream(seed, 1);
    let cms: Vec<CovMat4> = (0..n)
        .map(|_| random_physical_cm(&mut rng))
        .collect::<Result<_>>()?;
    let r: Vec<f64> = cms
        .par_iter()
        .map(|cm| {
            let inv = cm.invariants();
            Ok((emin_closed_form(&inv) - emin_oracle(cm, Party::Second)?).abs())
        })
        .collect::<Result<_>>()?;
    Ok(CheckReport::from_residuals("emin-general", 1e-6, &r))
}

fn discord_bounds(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let inv = output(s)?.invariants();
        let im = mutual_information(&inv)?;
        let mut worst = (-im).max(0.0);
        for d in [Direction::OneGivenTwo, Direction::TwoGivenOne] {
            let dd = gaussian_discord(&inv, d)?;
            worst = worst.max((-dd).max(0.0)).max((dd - im).max(0.0));
        }
        Ok(worst)
    })?;
    Ok(CheckReport::from_residuals("discord-bounds", 1e-9, &r))
}

fn separable_discord(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let inv = output(s)?.invariants();
        if ppt_eigenvalue(&inv)? >= 0.5 {
            Ok((gaussian_discord(&inv, Direction::OneGivenTwo)? - 1.0).max(0.0))
        } else {
            Ok(0.0)
        }
    })?;
    Ok(CheckReport::from_residuals("separable-discord", 1e-9, &r))
}

fn entanglement_vs_p(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::default(), n);
    let r = par_residuals(&xs, |s| {
        if s.tau <= 0.0 || s.tau >= 1.0 {
            return Ok(0.0);
        }
        let lt = ppt_eigenvalue(&output(s)?.invariants())?;
        let entangled = lt < 0.5;
        let nonclassical = s.n_s > p_threshold_ns(s.n_t);
        Ok(if entangled == nonclassical { 0.0 } else { 1.0 })
    })?;
    Ok(CheckReport::from_residuals("entanglement-vs-p", 0.0, &r))
}

fn depth_agreement(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::default(), n);
    let r = par_residuals(&xs, |s| {
        let st = SingleModeState::new(s.n_s, s.n_t)?;
        Ok((nonclassical_depth(&st) - nonclassical_depth_from_squeezing(&st)).abs())
    })?;
    Ok(CheckReport::from_residuals("depth-agreement", 1e-12, &r))
}

fn threshold_correctness(n: usize, seed: u64) -> Result<CheckReport> {
    let xs = ensemble(seed, &SamplingLaw::thermal_reference(), n);
    let r = par_residuals(&xs, |s| {
        let tau = s.tau.clamp(1e-3, 1.0 - 1e-3);
        let ns = sep_threshold_ns(s.n_t, s.n2, tau)?;
        let lt = |ns: f64| -> Result<f64> {
            ppt_eigenvalue(
                &mix(
                    &SingleModeState::new(ns, s.n_t)?,
                    s.n2,
                    &BeamSplitter::new(tau)?,
                )?
                .invariants(),
            )
        };
        let at = (lt(ns)? - 0.5).abs();
        let below_ok = lt(0.99 * ns)? > 0.5;
        let above_ok = lt(1.01 * ns)? < 0.5;
        Ok(if below_ok && above_ok {
            at
        } else {
            f64::INFINITY
        })
    })?;
    Ok(CheckReport::from_residuals(
        "threshold-correctness",
        1e-9,
        &r,
    ))
}

fn tau_independence(n: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = sampling::substream(seed, 2);
    let nts: Vec<f64> = (0..n).map(|_| log_uniform(&mut rng, 1e-3, 1e2)).collect();
    let r = nts
        .iter()
        .map(|&nt| {
            let reference = sep_threshold_ns(nt, 0.0, 0.5)?;
            let vac = (1..10)
                .map(|k| sep_threshold_ns(nt, 0.0, k as f64 / 10.0).map(|v| (v - reference).abs()))
                .collect::<Result<Vec<_>>>()?;
            let sq_ref = sep_threshold_ns(0.0, nt, 0.5)?;
            let sq = (1..10)
                .map(|k| sep_threshold_ns(0.0, nt, k as f64 / 10.0).map(|v| (v - sq_ref).abs()))
                .collect::<Result<Vec<_>>>()?;
            Ok(vac.into_iter().chain(sq).fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CheckReport::from_residuals("tau-independence", 1e-12, &r))
}

fn sep_monotonicity(n: usize, seed: u64) -> Result<CheckReport> {
    let mut rng = sampling::substream(seed, 3);
    let r = (0..n)
        .map(|_| {
            let nt = log_uniform(&mut rng, 1e-3, 1e2);
            let tau: f64 = rng.random_range(0.01..0.99);
            let mut prev = sep_threshold_ns(nt, 0.0, tau)?;
            let mut worst: f64 = 0.0;
            for k in 1..=60 {
                let n2 = 1e-3 * 10f64.powf(k as f64 / 12.0);
                let cur = sep_threshold_ns(nt, n2, tau)?;
                worst = worst.max((prev - cur).max(0.0) / prev.max(1.0));
                prev = cur;
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CheckReport::from_residuals("sep-monotonicity", 1e-12, &r))
}

fn inverse_pair(n: usize, _seed: u64) -> Result<CheckReport> {
    let r: Vec<f64> = (0..n)
        .map(|k| {
            let nt = 100.0 * k as f64 / (n.max(2) - 1) as f64;
            (p_threshold_nt(p_threshold_ns(nt)) - nt).abs()
        })
        .collect();
    Ok(CheckReport::from_residuals("inverse-pair", 1e-10, &r))
}

fn lambda_monotone_n2(n: usize, seed: u64) -> Result<CheckReport> {
    let law = SamplingLaw {
        tau: TauLaw::Uniform,
        ..SamplingLaw::default()
    };
    let xs = ensemble(seed, &law, n);
    let r = par_residuals(&xs, |s| {
        let tau = s.tau.clamp(1e-3, 1.0 - 1e-3);
        let st = SingleModeState::new(s.n_s, s.n_t)?;
        let bs = BeamSplitter::new(tau)?;
        let mut prev = ppt_eigenvalue(&mix(&st, 0.0, &bs)?.invariants())?;
        let mut worst: f64 = 0.0;
        for k in 0..=80 {
            let n2 = 1e-4 * 10f64.powf(k as f64 / 10.0);
            let cur = ppt_eigenvalue(&mix(&st, n2, &bs)?.invariants())?;
            worst = worst.max((prev - cur).max(0.0) / prev);
            prev = cur;
        }
        Ok(worst)
    })?;
    Ok(CheckReport::from_residuals("lambda-monotone-n2", 1e-10, &r))
}

/// States that are P-nonclassical by a margin: `n_s = n_s^P(n_t) + extra`.
pub fn nonclassical_ensemble(seed: u64, n: usize) -> Vec<SingleModeState> {
    let mut rng = sampling::substream(seed, 4);
    (0..n)
        .map(|_| {
            let nt = log_uniform(&mut rng, 1e-3, 1e2);
            let extra = log_uniform(&mut rng, 1e-3, 1e2);
            SingleModeState::new(p_threshold_ns(nt) + extra, nt).expect("nonnegative")
        })
        .collect()
}

fn e_tau_unimodal(n: usize, seed: u64) -> Result<CheckReport> {
    let states = nonclassical_ensemble(seed, n);
    let r: Vec<f64> = states
        .par_iter()
        .map(|st| {
            let values = (1..100)
                .map(|k| effective_nc_at_tau(st, k as f64 / 100.0))
                .collect::<Result<Vec<f64>>>()?;
            let peak = values
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map(|p| p.0)
                .unwrap_or(0);
            let scale = values[peak].max(1e-300);
            let mut worst: f64 = 0.0;
            for w in values[..=peak].windows(2) {
                worst = worst.max((w[0] - w[1]).max(0.0) / scale);
            }
            for w in values[peak..].windows(2) {
                worst = worst.max((w[1] - w[0]).max(0.0) / scale);
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(CheckReport::from_residuals("e-tau-unimodal", 1e-10, &r))
}

fn depth_identity(n: usize, seed: u64) -> Result<CheckReport> {
    let states = nonclassical_ensemble(seed, n);
    let r: Vec<f64> = states
        .par_iter()
        .map(|st| {
            let e = effective_nc(st)?;
            let from_depth = effective_nc_from_depth(nonclassical_depth(st));
            let closed = effective_nc_closed_form(st);
            Ok((e.value - from_depth).abs().max((e.value - closed).abs()))
        })
        .collect::<Result<_>>()?;
    Ok(CheckReport::from_residuals("depth-identity", 1e-8, &r))
}

/// Worst `|τ* − 1/2|` of the effective-nonclassicality maximization.
pub fn worst_tau_star_offset(states: &[SingleModeState]) -> Result<f64> {
    let offsets: Vec<f64> = states
        .par_iter()
        .map(|st| effective_nc(st).map(|e| (e.tau_star - 0.5).abs()))
        .collect::<Result<_>>()?;
    Ok(offsets.into_iter().fold(0.0, f64::max))
}

/// Invariants of one mixing configuration, for callers holding raw numbers.
pub fn invariants_of(n_s: f64, n_t: f64, n2: f64, tau: f64) -> Result<Invariants> {
    Ok(output(&MixingSample { n_s, n_t, n2, tau })?.invariants())
}
