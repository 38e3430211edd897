//! Brute-force minimization of the conditional determinant over pure
//! single-mode Gaussian measurements.
//!
//! This is the independent check for [`super::emin_closed_form`]. A
//! measurement seed has covariance `R(θ) diag(e^{2s}, e^{−2s}) R(θ)ᵀ / 2`.
//! The search runs over the contraction `ε = e^{−2s} ∈ [0, 1]` instead of
//! `s`, so heterodyne (`ε = 1`) and the ideal homodyne limit (`ε = 0`) are
//! both grid points and no squeezing cutoff is needed.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::CovMat4;
use crate::optimize::golden_section_min;

/// Which mode is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Party {
    First,
    Second,
}

/// Pure Gaussian measurement seed. `squeeze = ∞` is homodyne detection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianMeasurement {
    pub squeeze: f64,
    pub angle: f64,
}

impl GaussianMeasurement {
    pub fn from_contraction(eps: f64, angle: f64) -> Self {
        let squeeze = if eps <= 0.0 {
            f64::INFINITY
        } else {
            -0.5 * eps.ln()
        };
        Self {
            squeeze,
            angle: angle.rem_euclid(PI),
        }
    }

    /// `e^{−2·squeeze}`.
    pub fn contraction(&self) -> f64 {
        (-2.0 * self.squeeze).exp()
    }

    /// Seed covariance; `None` in the homodyne limit.
    pub fn covariance(&self) -> Option<Matrix2<f64>> {
        if !self.squeeze.is_finite() {
            return None;
        }
        let rot = rotation(self.angle);
        let d = Matrix2::new(
            (2.0 * self.squeeze).exp(),
            0.0,
            0.0,
            (-2.0 * self.squeeze).exp(),
        );
        Some(rot * d * rot.transpose() * 0.5)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Angles in the initial profile; each `ε` scan uses `grid/2 + 1` points.
    pub grid: usize,
    /// Bracket width at which golden-section refinement stops.
    pub tol: f64,
    /// Number of best grid cells refined.
    pub starts: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            grid: 64,
            tol: 1e-10,
            starts: 3,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct OracleResult {
    pub emin: f64,
    pub measurement: GaussianMeasurement,
}

fn rotation(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, -s, s, c)
}

/// Conditional covariance determinant for one measurement setting.
struct Conditional {
    a: Matrix2<f64>,
    b: Matrix2<f64>,
    c: Matrix2<f64>,
}

impl Conditional {
    fn new(cm: &CovMat4, measured: Party) -> Self {
        let cm = match measured {
            Party::Second => *cm,
            Party::First => cm.swap_modes(),
        };
        Self {
            a: cm.block_a(),
            b: cm.block_b(),
            c: cm.block_c(),
        }
    }

    /// `det(A − C (B + σ_m)⁻¹ Cᵀ)` with `(B + σ_m)⁻¹` scaled by `ε` so that
    /// `ε = 0` is finite.
    fn det(&self, eps: f64, theta: f64) -> f64 {
        let rot = rotation(theta);
        let b = rot.transpose() * self.b * rot;
        let c = self.c * rot;
        let adj = Matrix2::new(
            eps * b[(1, 1)] + 0.5 * eps * eps,
            -eps * b[(0, 1)],
            -eps * b[(1, 0)],
            eps * b[(0, 0)] + 0.5,
        );
        let det = (eps * b[(0, 0)] + 0.5) * (b[(1, 1)] + 0.5 * eps) - eps * b[(0, 1)] * b[(1, 0)];
        (self.a - c * adj * c.transpose() / det).determinant()
    }

    /// Minimum over `ε` at fixed `θ`: a `scan`-point grid, then golden
    /// section on the bracket around the best grid point.
    fn min_over_contraction(&self, theta: f64, scan: usize, tol: f64) -> Result<(f64, f64)> {
        let step = 1.0 / (scan - 1) as f64;
        let (best_i, _) = (0..scan)
            .map(|i| (i, self.det(i as f64 * step, theta)))
            .fold(
                (0, f64::INFINITY),
                |acc, (i, v)| if v < acc.1 { (i, v) } else { acc },
            );
        let lo = (best_i as f64 - 1.0).max(0.0) * step;
        let hi = ((best_i + 1) as f64 * step).min(1.0);
        let m = golden_section_min(|e| self.det(e, theta), lo, hi, tol)?;
        Ok((m.x, m.value))
    }
}

/// `min det σ_{A|meas}` over Gaussian measurements on `measured`, with the
/// default search settings.
pub fn emin_oracle(cm: &CovMat4, measured: Party) -> Result<f64> {
    Ok(emin_oracle_with(cm, measured, &OracleConfig::default())?.emin)
}

/// Profile search: for each of `grid` angles the determinant is minimized
/// over `ε`; the best `starts` separated angles are then refined by golden
/// section on the profile. Near heterodyne the determinant barely depends on
/// `θ` at fixed `ε`, so ranking angles by raw grid cells is not reliable.
pub fn emin_oracle_with(cm: &CovMat4, measured: Party, cfg: &OracleConfig) -> Result<OracleResult> {
    if cfg.grid < 2 {
        return Err(Error::NoConvergence(
            "oracle grid needs at least 2 points".into(),
        ));
    }
    let cond = Conditional::new(cm, measured);
    let g = cfg.grid;
    let scan = g / 2 + 1;
    let d_theta = PI / g as f64;

    let mut profile: Vec<(usize, f64, f64)> = (0..g)
        .into_par_iter()
        .map(|j| {
            cond.min_over_contraction(j as f64 * d_theta, scan, cfg.tol)
                .map(|(eps, v)| (j, eps, v))
        })
        .collect::<Result<_>>()?;
    if profile.iter().any(|c| c.2.is_nan()) {
        return Err(Error::NoConvergence(
            "conditional determinant is NaN on the grid".into(),
        ));
    }
    // ties resolve by index so repeated runs agree
    profile.sort_by(|x, y| x.2.total_cmp(&y.2).then(x.0.cmp(&y.0)));

    let (j0, eps0, v0) = profile[0];
    let mut best = OracleResult {
        emin: v0,
        measurement: GaussianMeasurement::from_contraction(eps0, j0 as f64 * d_theta),
    };

    let mut starts: Vec<usize> = Vec::new();
    for &(j, _, _) in &profile {
        if starts.len() >= cfg.starts {
            break;
        }
        if !starts
            .iter()
            .any(|&s| s.abs_diff(j) <= 1 || s.abs_diff(j) >= g - 1)
        {
            starts.push(j);
        }
    }

    for j in starts {
        let centre = j as f64 * d_theta;
        let mut inner_err = None;
        let outer = golden_section_min(
            |theta| match cond.min_over_contraction(theta, scan, cfg.tol) {
                Ok((_, v)) => v,
                Err(e) => {
                    inner_err = Some(e);
                    f64::NAN
                }
            },
            centre - d_theta,
            centre + d_theta,
            cfg.tol,
        );
        if let Some(e) = inner_err {
            return Err(e);
        }
        let outer = outer?;
        let (eps, value) = cond.min_over_contraction(outer.x, scan, cfg.tol)?;
        if value < best.emin {
            best = OracleResult {
                emin: value,
                measurement: GaussianMeasurement::from_contraction(eps, outer.x),
            };
        }
    }
    Ok(best)
}

/// Conditional determinant for an explicit measurement, exposed for tests
/// and diagnostics.
pub fn conditional_det(cm: &CovMat4, measured: Party, m: &GaussianMeasurement) -> f64 {
    Conditional::new(cm, measured).det(m.contraction(), m.angle)
}
