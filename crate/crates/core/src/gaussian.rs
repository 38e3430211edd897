//! Single- and two-mode Gaussian states in covariance-matrix form.
//!
//! Units: quadratures are `q = (a + a†)/√2`, `p = (a − a†)/(i√2)`, so the
//! vacuum covariance matrix is `diag(1/2, 1/2)` and a thermal state with `n`
//! mean photons is `(1/2 + n)·I`. Every formula in this crate uses that
//! convention; literature using "vacuum = 1" differs by a factor of 2 per
//! covariance entry. First moments are always zero and are not represented.

use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use crate::error::{check_nonneg, Error, Result};

/// Variance of each vacuum quadrature.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Relative size below which a negative symplectic discriminant is treated
/// as rounding noise and clamped to zero.
pub const DISCRIMINANT_CLAMP: f64 = 1e-10;

/// Slack allowed below 1/2 for the smallest symplectic eigenvalue.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Squeezed thermal state `S(r) ν(n_t) S(r)†` with real squeezing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingleModeState {
    n_s: f64,
    n_t: f64,
}

impl SingleModeState {
    /// `n_s = sinh²r` squeezed photons on top of `n_t` thermal photons.
    pub fn new(n_s: f64, n_t: f64) -> Result<Self> {
        Ok(Self {
            n_s: check_nonneg("n_s", n_s)?,
            n_t: check_nonneg("n_t", n_t)?,
        })
    }

    pub fn vacuum() -> Self {
        Self { n_s: 0.0, n_t: 0.0 }
    }

    pub fn thermal(n_t: f64) -> Result<Self> {
        Self::new(0.0, n_t)
    }

    pub fn squeezed_vacuum(n_s: f64) -> Result<Self> {
        Self::new(n_s, 0.0)
    }

    pub fn n_s(&self) -> f64 {
        self.n_s
    }

    pub fn n_t(&self) -> f64 {
        self.n_t
    }

    /// Mean photon number `n_t + (1 + 2 n_t) n_s`.
    pub fn total_photons(&self) -> f64 {
        self.n_t + (1.0 + 2.0 * self.n_t) * self.n_s
    }

    /// `Δ = (1 + 2 n_t) √(n_s (1 + n_s))`.
    pub fn delta(&self) -> f64 {
        (1.0 + 2.0 * self.n_t) * (self.n_s * (1.0 + self.n_s)).sqrt()
    }

    /// Purity `Tr ρ² = 1/(1 + 2 n_t)`.
    pub fn purity(&self) -> f64 {
        1.0 / (1.0 + 2.0 * self.n_t)
    }

    /// Squeezing parameter `r = arcsinh √n_s`.
    pub fn squeezing(&self) -> f64 {
        self.n_s.sqrt().asinh()
    }

    /// Smallest covariance eigenvalue `u = 1/2 + n₁ − Δ`.
    ///
    /// Evaluated as `(1/2 + n_t) e^{−2r}`, which is the same number without
    /// the cancellation between `n₁` and `Δ` at strong squeezing.
    pub fn min_variance(&self) -> f64 {
        let e_r = self.n_s.sqrt() + (1.0 + self.n_s).sqrt();
        (VACUUM_VARIANCE + self.n_t) / (e_r * e_r)
    }

    pub fn covariance(&self) -> CovMat2 {
        cm_single_mode(self)
    }
}

/// Real symmetric 2×2 single-mode covariance matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovMat2(Matrix2<f64>);

impl CovMat2 {
    /// Validates symmetry, positive definiteness and `det ≥ 1/4`.
    pub fn new(m: Matrix2<f64>) -> Result<Self> {
        let scale = m.abs().max().max(1.0);
        if (m[(0, 1)] - m[(1, 0)]).abs() > 1e-12 * scale {
            return Err(Error::InvalidParameter {
                name: "covariance",
                value: m[(0, 1)] - m[(1, 0)],
                reason: "matrix is not symmetric",
            });
        }
        let det = m.determinant();
        if m[(0, 0)] <= 0.0 || det <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "covariance",
                value: det,
                reason: "matrix is not positive definite",
            });
        }
        if det < 0.25 - PHYSICALITY_TOL {
            return Err(Error::InvalidParameter {
                name: "covariance",
                value: det,
                reason: "determinant violates the uncertainty bound 1/4",
            });
        }
        Ok(Self(m))
    }

    pub fn diagonal(x: f64, p: f64) -> Result<Self> {
        Self::new(Matrix2::new(x, 0.0, 0.0, p))
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let m = &self.0;
        let half_tr = 0.5 * m.trace();
        let gap = (0.25 * (m[(0, 0)] - m[(1, 1)]).powi(2) + m[(0, 1)] * m[(1, 0)]).sqrt();
        let big = half_tr + gap;
        // product of eigenvalues is the determinant
        self.det() / big
    }

    /// Purity `1/(2 √det σ)`.
    pub fn purity(&self) -> f64 {
        0.5 / self.det().sqrt()
    }
}

/// Real symmetric 4×4 two-mode covariance matrix `[[A, C], [Cᵀ, B]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovMat4(Matrix4<f64>);

impl CovMat4 {
    /// Validates symmetry and `λ₋ ≥ 1/2`.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let scale = m.abs().max().max(1.0);
        if (m - m.transpose()).abs().max() > 1e-12 * scale {
            return Err(Error::InvalidParameter {
                name: "covariance",
                value: (m - m.transpose()).abs().max(),
                reason: "matrix is not symmetric",
            });
        }
        if m.cholesky().is_none() {
            return Err(Error::InvalidParameter {
                name: "covariance",
                value: m.determinant(),
                reason: "matrix is not positive definite",
            });
        }
        let cm = Self(m);
        cm.invariants().symplectic_eigenvalues()?;
        Ok(cm)
    }

    /// Product state `σ₁ ⊕ σ₂`.
    pub fn direct_sum(first: &CovMat2, second: &CovMat2) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(first.matrix());
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(second.matrix());
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn block_c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    /// `det Σ = det A · det(B − Cᵀ A⁻¹ C)`.
    pub fn det(&self) -> f64 {
        let a = self.block_a();
        let c = self.block_c();
        let a_inv = a.try_inverse().unwrap_or_else(Matrix2::zeros);
        let schur = self.block_b() - c.transpose() * a_inv * c;
        a.determinant() * schur.determinant()
    }

    pub fn invariants(&self) -> Invariants {
        symplectic_invariants(self)
    }

    /// Congruence `S Σ Sᵀ`. No check is made that `s` is symplectic.
    pub fn transform(&self, s: &Matrix4<f64>) -> Self {
        let m = s * self.0 * s.transpose();
        Self(0.5 * (m + m.transpose()))
    }

    /// Exchanges the two modes.
    pub fn swap_modes(&self) -> Self {
        let mut p = Matrix4::zeros();
        p[(0, 2)] = 1.0;
        p[(1, 3)] = 1.0;
        p[(2, 0)] = 1.0;
        p[(3, 1)] = 1.0;
        self.transform(&p)
    }

    /// Partial transposition of the second mode (`p₂ → −p₂`).
    pub fn partial_transpose(&self) -> Self {
        self.transform(&Matrix4::from_diagonal(&nalgebra::Vector4::new(
            1.0, 1.0, 1.0, -1.0,
        )))
    }
}

/// Lossless beam splitter of transmissivity `τ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitter {
    tau: f64,
}

impl BeamSplitter {
    pub fn new(tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::InvalidParameter {
                name: "tau",
                value: tau,
                reason: "transmissivity must lie in [0, 1]",
            });
        }
        Ok(Self { tau })
    }

    pub fn balanced() -> Self {
        Self { tau: 0.5 }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Phase-space matrix `[[√τ I, √(1−τ) I], [−√(1−τ) I, √τ I]]`.
    pub fn symplectic(&self) -> Matrix4<f64> {
        let t = self.tau.sqrt();
        let r = (1.0 - self.tau).sqrt();
        Matrix4::new(
            t, 0.0, r, 0.0, //
            0.0, t, 0.0, r, //
            -r, 0.0, t, 0.0, //
            0.0, -r, 0.0, t,
        )
    }

    pub fn apply(&self, first: &CovMat2, second: &CovMat2) -> CovMat4 {
        apply_beam_splitter(first, second, self)
    }
}

/// Local symplectic invariants of a two-mode covariance matrix.
///
/// Invariants taken from a matrix also carry `λ₊² − λ₋²` for the state and
/// its partial transpose. Near a degenerate spectrum the discriminant
/// `Δ² − 4I₄` cancels to round-off and its square root loses half the
/// digits; the stored spreads replace it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Invariants {
    /// `det A`
    pub i1: f64,
    /// `det B`
    pub i2: f64,
    /// `det C`
    pub i3: f64,
    /// `det Σ`
    pub i4: f64,
    #[serde(skip)]
    spreads: Option<(f64, f64)>,
}

impl Invariants {
    /// Invariants given as numbers; eigenvalues come from the discriminant.
    pub fn new(i1: f64, i2: f64, i3: f64, i4: f64) -> Self {
        Self {
            i1,
            i2,
            i3,
            i4,
            spreads: None,
        }
    }

    /// Mode exchange: `I₁ ↔ I₂`.
    pub fn swapped(&self) -> Self {
        Self {
            i1: self.i2,
            i2: self.i1,
            ..*self
        }
    }

    /// `(λ₊, λ₋)`; fails if `λ₋ < 1/2` beyond [`PHYSICALITY_TOL`].
    pub fn symplectic_eigenvalues(&self) -> Result<(f64, f64)> {
        let (plus, minus) = spectrum(
            self.i1 + self.i2 + 2.0 * self.i3,
            self.i4,
            self.spreads.map(|s| s.0),
        )?;
        if minus < VACUUM_VARIANCE - PHYSICALITY_TOL {
            return Err(Error::Unphysical {
                lambda_minus: minus,
            });
        }
        Ok((plus, minus))
    }

    /// `(λ̃₊, λ̃₋)` of the partially transposed state.
    pub fn ppt_eigenvalues(&self) -> Result<(f64, f64)> {
        spectrum(
            self.i1 + self.i2 - 2.0 * self.i3,
            self.i4,
            self.spreads.map(|s| s.1),
        )
    }
}

// λ±² are the roots of x² − sum·x + I₄. The smaller root is taken from the
// product I₄ to avoid cancelling `sum` against the square root.
fn spectrum(sum: f64, i4: f64, spread: Option<f64>) -> Result<(f64, f64)> {
    let root = match spread {
        Some(s) => s,
        None => {
            let disc = sum * sum - 4.0 * i4;
            if disc < -DISCRIMINANT_CLAMP * (sum * sum).max(1.0) {
                return Err(Error::NegativeDiscriminant { discriminant: disc });
            }
            disc.max(0.0).sqrt()
        }
    };
    let disc = root * root;
    let big = 0.5 * (sum + root);
    if big <= 0.0 {
        return Err(Error::NegativeDiscriminant { discriminant: disc });
    }
    let small = i4 / big;
    Ok((big.sqrt(), small.max(0.0).sqrt()))
}

/// Covariance matrix of `ρ(n_s, n_t)`: `diag(1/2 + n₁ + Δ, 1/2 + n₁ − Δ)`.
pub fn cm_single_mode(state: &SingleModeState) -> CovMat2 {
    let x = VACUUM_VARIANCE + state.total_photons() + state.delta();
    let p = state.min_variance();
    CovMat2(Matrix2::new(x, 0.0, 0.0, p))
}

/// Thermal covariance matrix `(1/2 + n) I`.
pub fn cm_thermal(n: f64) -> Result<CovMat2> {
    let n = check_nonneg("n2", n)?;
    Ok(CovMat2(Matrix2::identity() * (VACUUM_VARIANCE + n)))
}

/// Output covariance `S_τ (σ₁ ⊕ σ₂) S_τᵀ`.
pub fn apply_beam_splitter(first: &CovMat2, second: &CovMat2, bs: &BeamSplitter) -> CovMat4 {
    CovMat4::direct_sum(first, second).transform(&bs.symplectic())
}

/// Block determinants `(det A, det B, det C, det Σ)`.
pub fn symplectic_invariants(cm: &CovMat4) -> Invariants {
    let spreads = match (spread(cm.matrix()), spread(cm.partial_transpose().matrix())) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    };
    Invariants {
        i1: cm.block_a().determinant(),
        i2: cm.block_b().determinant(),
        i3: cm.block_c().determinant(),
        i4: cm.det(),
        spreads,
    }
}

/// `λ₊² − λ₋²` from the singular values of `Lᵀ Ω L`, `Σ = L Lᵀ`, which are
/// the symplectic eigenvalues, each twice.
fn spread(m: &Matrix4<f64>) -> Option<f64> {
    let l = m.cholesky()?.unpack();
    let omega = Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    );
    let mut sv: Vec<f64> = (l.transpose() * omega * l)
        .singular_values()
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let plus = 0.5 * (sv[0] + sv[1]);
    let minus = 0.5 * (sv[2] + sv[3]);
    Some((plus - minus) * (plus + minus))
}

pub fn symplectic_eigenvalues(inv: &Invariants) -> Result<(f64, f64)> {
    inv.symplectic_eigenvalues()
}

/// Smaller symplectic eigenvalue of the partial transpose; entangled iff `< 1/2`.
pub fn ppt_eigenvalue(inv: &Invariants) -> Result<f64> {
    Ok(inv.ppt_eigenvalues()?.1)
}

/// Invariants of [`mix`] with `I₄` taken as the product of the input
/// determinants, `(1/2 + n_t)²(1/2 + n₂)²`, which the splitter preserves.
/// Computing `det Σ` from a matrix with entries of order `n₁` loses
/// relative precision in proportion to its condition number.
pub fn mix_invariants(state: &SingleModeState, n2: f64, bs: &BeamSplitter) -> Result<Invariants> {
    let mut inv = mix(state, n2, bs)?.invariants();
    inv.i4 = ((VACUUM_VARIANCE + state.n_t()) * (VACUUM_VARIANCE + n2)).powi(2);
    Ok(inv)
}

/// Output of mixing `ρ(n_s, n_t)` with `ν(n₂)` at transmissivity `τ`.
pub fn mix(state: &SingleModeState, n2: f64, bs: &BeamSplitter) -> Result<CovMat4> {
    Ok(bs.apply(&state.covariance(), &cm_thermal(n2)?))
}
