//! Classicality and separability thresholds, and the effective
//! nonclassicality of a single-mode state.
//!
//! The closed forms are the primary results. The numerical searches here
//! (bisection in `n₂` or `n_s`, golden-section over `τ`) only call the
//! generic covariance-matrix code and serve as independent cross-checks.

use serde::{Deserialize, Serialize};

use crate::error::{check_nonneg, Error, Result};
use crate::gaussian::{mix_invariants, ppt_eigenvalue, BeamSplitter, SingleModeState};
use crate::measures::{nonclassical_depth, p_classical};
use crate::optimize::{bisect, golden_section_max};

/// Depth closer than this to 1/2 counts as infinitely squeezed.
pub const DEPTH_DIVERGENCE_TOL: f64 = 1e-12;

/// Edge excluded from the `τ` search interval.
pub const TAU_EDGE: f64 = 1e-6;

/// Bracket width for the `τ` maximization.
pub const TAU_TOL: f64 = 1e-8;

/// A separability threshold together with where it was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPoint {
    pub n_s_threshold: f64,
    pub n_t: f64,
    pub n2: f64,
    pub tau: f64,
}

/// Maximum reference-port photon number that still leaves the output
/// entangled, maximized over the transmissivity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveNC {
    pub value: f64,
    pub tau_star: f64,
}

/// Squeezed photons at the P-classicality boundary: `n_t²/(1 + 2n_t)`.
pub fn p_threshold_ns(n_t: f64) -> f64 {
    n_t * n_t / (1.0 + 2.0 * n_t)
}

/// Thermal photons at the P-classicality boundary: `n_s + √(n_s(1 + n_s))`.
pub fn p_threshold_nt(n_s: f64) -> f64 {
    n_s + (n_s * (1.0 + n_s)).sqrt()
}

fn check_open_tau(tau: f64) -> Result<f64> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            reason: "threshold needs 0 < tau < 1",
        });
    }
    Ok(tau)
}

/// Separability threshold for mixing with `ν(n₂)`:
/// `μ₁μ₂/(τ(1−τ)) Θ_{t,2} Θ_{2,t}`, `Θ_{k,l} = n_k n_l + n_k − (n_k − n_l)τ`.
pub fn sep_threshold_ns(n_t: f64, n2: f64, tau: f64) -> Result<f64> {
    let n_t = check_nonneg("n_t", n_t)?;
    let n2 = check_nonneg("n2", n2)?;
    let tau = check_open_tau(tau)?;
    let mu1 = 1.0 / (1.0 + 2.0 * n_t);
    let mu2 = 1.0 / (1.0 + 2.0 * n2);
    let theta = |k: f64, l: f64| k * l + k - (k - l) * tau;
    Ok(mu1 * mu2 / (tau * (1.0 - tau)) * theta(n_t, n2) * theta(n2, n_t))
}

pub fn sep_threshold_point(n_t: f64, n2: f64, tau: f64) -> Result<ThresholdPoint> {
    Ok(ThresholdPoint {
        n_s_threshold: sep_threshold_ns(n_t, n2, tau)?,
        n_t,
        n2,
        tau,
    })
}

/// Balanced-splitter separability threshold written through the
/// P-threshold: `[n₂ + h(1+2n₂)]² / ((1+2n₂)(1+2h))`, `h = p_threshold_nt(n_s^P)`.
pub fn sep_threshold_vs_p_threshold(n_s_p: f64, n2: f64) -> Result<f64> {
    let n_s_p = check_nonneg("n_s_p", n_s_p)?;
    let n2 = check_nonneg("n2", n2)?;
    let h = p_threshold_nt(n_s_p);
    let k = 1.0 + 2.0 * n2;
    Ok((n2 + h * k).powi(2) / (k * (1.0 + 2.0 * h)))
}

fn ppt_lambda(n_s: f64, n_t: f64, n2: f64, tau: f64) -> Result<f64> {
    let s = SingleModeState::new(n_s, n_t)?;
    ppt_eigenvalue(&mix_invariants(&s, n2, &BeamSplitter::new(tau)?)?)
}

/// Separability threshold by bisection on `λ̃₋(n_s) = 1/2`.
pub fn sep_threshold_ns_numeric(n_t: f64, n2: f64, tau: f64) -> Result<f64> {
    check_nonneg("n_t", n_t)?;
    check_nonneg("n2", n2)?;
    check_open_tau(tau)?;
    let g = |ns: f64| ppt_lambda(ns, n_t, n2, tau).map_or(f64::NAN, |l| l - 0.5);
    let mut hi = 1.0 + n_t + n2;
    let mut expansions = 0;
    while g(hi) >= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::NotBracketed {
                lo: 0.0,
                hi,
                f_lo: g(0.0),
                f_hi: g(hi),
            });
        }
    }
    bisect(g, 0.0, hi, 0.0)
}

/// Closed-form effective nonclassicality at `τ = 1/2`:
/// `(n_s − n_t + √(n_s(1+n_s)))/(1+2n_t)`, clamped at 0.
pub fn effective_nc_closed_form(state: &SingleModeState) -> f64 {
    let (ns, nt) = (state.n_s(), state.n_t());
    ((ns - nt + (ns * (1.0 + ns)).sqrt()) / (1.0 + 2.0 * nt)).max(0.0)
}

/// `τ_m/(1 − 2τ_m)`; infinite once the depth reaches 1/2.
pub fn effective_nc_from_depth(depth: f64) -> f64 {
    if depth >= 0.5 - DEPTH_DIVERGENCE_TOL {
        return f64::INFINITY;
    }
    depth / (1.0 - 2.0 * depth)
}

/// Largest `n₂` for which the output at `τ` is still entangled, by
/// bisection of `λ̃₋(n₂) − 1/2`. Zero for P-classical inputs.
pub fn effective_nc_at_tau(state: &SingleModeState, tau: f64) -> Result<f64> {
    let tau = check_open_tau(tau)?;
    if p_classical(state) {
        return Ok(0.0);
    }
    let (ns, nt) = (state.n_s(), state.n_t());
    let g = |n2: f64| ppt_lambda(ns, nt, n2, tau).map_or(f64::NAN, |l| l - 0.5);
    let g0 = g(0.0);
    if g0 >= 0.0 {
        // an input just above the P-threshold may round onto the boundary
        if g0 <= 1e-12 {
            return Ok(0.0);
        }
        return Err(Error::NotBracketed {
            lo: 0.0,
            hi: 0.0,
            f_lo: g0,
            f_hi: g0,
        });
    }
    let mut hi = 10.0 * (1.0 + effective_nc_closed_form(state));
    let mut expansions = 0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::NotBracketed {
                lo: 0.0,
                hi,
                f_lo: g0,
                f_hi: g(hi),
            });
        }
    }
    bisect(g, 0.0, hi, 0.0)
}

/// `max_τ` of [`effective_nc_at_tau`] by golden-section search.
pub fn effective_nc(state: &SingleModeState) -> Result<EffectiveNC> {
    if p_classical(state) {
        return Ok(EffectiveNC {
            value: 0.0,
            tau_star: 0.5,
        });
    }
    if nonclassical_depth(state) >= 0.5 - DEPTH_DIVERGENCE_TOL {
        return Ok(EffectiveNC {
            value: f64::INFINITY,
            tau_star: 0.5,
        });
    }
    if state.n_t() == 0.0 {
        // the threshold `n₂` of a pure squeezed input does not depend on τ
        return Ok(EffectiveNC {
            value: effective_nc_at_tau(state, 0.5)?,
            tau_star: 0.5,
        });
    }
    let mut failure = None;
    let m = golden_section_max(
        |tau| match effective_nc_at_tau(state, tau) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        TAU_EDGE,
        1.0 - TAU_EDGE,
        TAU_TOL,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let m = m?;
    Ok(EffectiveNC {
        value: m.value,
        tau_star: m.x,
    })
}
