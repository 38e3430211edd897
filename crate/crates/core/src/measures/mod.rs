//! Nonclassicality and correlation quantifiers. All entropic quantities are
//! in nats.

mod discord;
mod oracle;

pub use discord::emin_closed_form;
pub use oracle::{
    conditional_det, emin_oracle, emin_oracle_with, GaussianMeasurement, OracleConfig,
    OracleResult, Party,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{mix_invariants, BeamSplitter, Invariants, SingleModeState, VACUUM_VARIANCE};
use crate::thresholds::p_threshold_ns;

/// Slack below 1/2 accepted by [`entropy_f`].
pub const ENTROPY_ARG_TOL: f64 = 1e-9;

/// Negative values of this size from round-off are reported as zero.
pub const CLAMP_TOL: f64 = 1e-9;

/// Margin below 1/2 that `λ̃₋` must clear to count as entangled. Product
/// states such as vacuum ⊗ vacuum sit exactly on the boundary and would
/// otherwise flip on the last bit.
pub const ENTANGLEMENT_TOL: f64 = 1e-12;

/// Direction of a discord: `OneGivenTwo` measures mode 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    OneGivenTwo,
    TwoGivenOne,
}

/// Minimum Gaussian smoothing that makes the P-function regular:
/// `max[(1 − 2u)/2, 0]`, `u` the smaller covariance eigenvalue.
pub fn nonclassical_depth(state: &SingleModeState) -> f64 {
    (0.5 - state.min_variance()).max(0.0)
}

/// The same depth from squeezing and purity: `max[(1 − e^{−2r}/μ)/2, 0]`.
pub fn nonclassical_depth_from_squeezing(state: &SingleModeState) -> f64 {
    let r = state.squeezing();
    (0.5 * (1.0 - (-2.0 * r).exp() / state.purity())).max(0.0)
}

/// True iff the P-function is a regular density, i.e. `n_s ≤ n_t²/(1+2n_t)`.
pub fn p_classical(state: &SingleModeState) -> bool {
    state.n_s() <= p_threshold_ns(state.n_t())
}

/// `f(x) = (x+½) ln(x+½) − (x−½) ln(x−½)`, with `f(½) = 0`.
pub fn entropy_f(x: f64) -> Result<f64> {
    if x.is_nan() || x < VACUUM_VARIANCE - ENTROPY_ARG_TOL {
        return Err(Error::InvalidParameter {
            name: "x",
            value: x,
            reason: "entropy function needs x >= 1/2",
        });
    }
    Ok(entropy(x))
}

// Written as ln(x+½) + (x−½)·ln(1 + 1/(x−½)) so large arguments do not
// cancel two x·ln x terms.
fn entropy(x: f64) -> f64 {
    let y = x - VACUUM_VARIANCE;
    if y <= 0.0 {
        return 0.0;
    }
    (x + VACUUM_VARIANCE).ln() + y * (1.0 / y).ln_1p()
}

fn clamp_small_negative(x: f64) -> f64 {
    if x < 0.0 && x > -CLAMP_TOL {
        0.0
    } else {
        x
    }
}

/// `f(√I₁) + f(√I₂) − f(λ₊) − f(λ₋)`.
pub fn mutual_information(inv: &Invariants) -> Result<f64> {
    let (lp, lm) = inv.symplectic_eigenvalues()?;
    let v = entropy(inv.i1.sqrt()) + entropy(inv.i2.sqrt()) - entropy(lp) - entropy(lm);
    Ok(clamp_small_negative(v))
}

/// Gaussian discord `f(√E_min) + f(√I_meas) − f(λ₊) − f(λ₋)`.
pub fn gaussian_discord(inv: &Invariants, direction: Direction) -> Result<f64> {
    let inv = match direction {
        Direction::OneGivenTwo => *inv,
        Direction::TwoGivenOne => inv.swapped(),
    };
    let (lp, lm) = inv.symplectic_eigenvalues()?;
    let emin = emin_closed_form(&inv);
    let v = entropy(emin.sqrt()) + entropy(inv.i2.sqrt()) - entropy(lp) - entropy(lm);
    Ok(clamp_small_negative(v))
}

/// PPT criterion `λ̃₋ < 1/2`, with [`ENTANGLEMENT_TOL`] of margin.
pub fn is_entangled(ppt_lambda_minus: f64) -> bool {
    ppt_lambda_minus < VACUUM_VARIANCE - ENTANGLEMENT_TOL
}

fn log_negativity_of(lt: f64) -> f64 {
    if is_entangled(lt) {
        -(2.0 * lt).ln()
    } else {
        0.0
    }
}

/// `max[−ln(2 λ̃₋), 0]`.
pub fn log_negativity(inv: &Invariants) -> Result<f64> {
    let (_, lt) = inv.ppt_eigenvalues()?;
    Ok(log_negativity_of(lt))
}

/// Every correlation quantifier of one two-mode output state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub discord_1g2: f64,
    pub discord_2g1: f64,
    pub mutual_info: f64,
    pub classical_corr_1g2: f64,
    pub ppt_lambda_minus: f64,
    pub log_negativity: f64,
    pub entangled: bool,
}

impl MeasureReport {
    pub fn from_invariants(inv: &Invariants) -> Result<Self> {
        let discord_1g2 = gaussian_discord(inv, Direction::OneGivenTwo)?;
        let discord_2g1 = gaussian_discord(inv, Direction::TwoGivenOne)?;
        let mutual_info = mutual_information(inv)?;
        let (_, lt) = inv.ppt_eigenvalues()?;
        Ok(Self {
            discord_1g2,
            discord_2g1,
            mutual_info,
            classical_corr_1g2: clamp_small_negative(mutual_info - discord_1g2),
            ppt_lambda_minus: lt,
            log_negativity: log_negativity_of(lt),
            entangled: is_entangled(lt),
        })
    }

    /// Report for `ρ(n_s, n_t)` mixed with `ν(n₂)` at `bs`.
    pub fn for_mixing(state: &SingleModeState, n2: f64, bs: &BeamSplitter) -> Result<Self> {
        Self::from_invariants(&mix_invariants(state, n2, bs)?)
    }

    /// Entropic fields divided by ln 2; `ppt_lambda_minus` is unchanged.
    pub fn in_bits(&self) -> Self {
        let k = std::f64::consts::LN_2;
        Self {
            discord_1g2: self.discord_1g2 / k,
            discord_2g1: self.discord_2g1 / k,
            mutual_info: self.mutual_info / k,
            classical_corr_1g2: self.classical_corr_1g2 / k,
            log_negativity: self.log_negativity / k,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    fn report(ns: f64, nt: f64, n2: f64, tau: f64) -> MeasureReport {
        let s = SingleModeState::new(ns, nt).unwrap();
        MeasureReport::for_mixing(&s, n2, &BeamSplitter::new(tau).unwrap()).unwrap()
    }

    #[test]
    fn depth_examples() {
        assert_eq!(nonclassical_depth(&SingleModeState::vacuum()), 0.0);
        for nt in [0.01, 1.0, 30.0] {
            let th = SingleModeState::thermal(nt).unwrap();
            assert_eq!(nonclassical_depth(&th), 0.0);
            assert_eq!(nonclassical_depth_from_squeezing(&th), 0.0);
        }
        let sq = SingleModeState::squeezed_vacuum(1.0).unwrap();
        assert_abs_diff_eq!(nonclassical_depth(&sq), 2f64.sqrt() - 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            nonclassical_depth_from_squeezing(&sq),
            2f64.sqrt() - 1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn p_classicality_boundary() {
        assert!(p_classical(&SingleModeState::new(1.0 / 3.0, 1.0).unwrap()));
        assert!(!p_classical(&SingleModeState::new(0.34, 1.0).unwrap()));
        assert!(p_classical(&SingleModeState::vacuum()));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy_f(0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(entropy_f(1.5).unwrap(), 2.0 * LN_2, epsilon = 1e-14);
        let direct = 1.5 * 1.5f64.ln() - 0.5 * 0.5f64.ln();
        assert_abs_diff_eq!(entropy_f(1.0).unwrap(), direct, epsilon = 1e-14);
        assert_abs_diff_eq!(direct, 0.954_77, epsilon = 1e-5);
        assert!(entropy_f(0.4).is_err());
        assert!(entropy_f(f64::NAN).is_err());
    }

    #[test]
    fn entropy_is_increasing() {
        let xs: Vec<f64> = (0..200).map(|k| 0.5 + 0.05 * k as f64 * k as f64).collect();
        for w in xs.windows(2) {
            assert!(entropy(w[1]) > entropy(w[0]));
        }
    }

    #[test]
    fn vacuum_input_has_no_correlations() {
        for tau in [0.0, 0.3, 0.5, 0.9] {
            let r = report(0.0, 0.0, 0.0, tau);
            assert_abs_diff_eq!(r.discord_1g2, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(r.discord_2g1, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(r.mutual_info, 0.0, epsilon = 1e-14);
            assert!(!r.entangled);
            assert_eq!(r.log_negativity, 0.0);
        }
    }

    #[test]
    fn thermal_input_is_discordant_but_separable() {
        let r = report(0.0, 1.0, 0.0, 0.5);
        assert!(r.discord_1g2 > 0.0);
        assert!(r.mutual_info > r.discord_1g2);
        assert_abs_diff_eq!(
            r.mutual_info,
            r.discord_1g2 + r.classical_corr_1g2,
            epsilon = 1e-14
        );
        assert!(!r.entangled);
        assert_eq!(r.log_negativity, 0.0);
    }

    #[test]
    fn thermal_discord_tends_to_ln2() {
        let r = report(0.0, 1e3, 0.0, 0.5);
        assert!((r.discord_1g2 / LN_2 - 1.0).abs() < 0.01);
    }

    #[test]
    fn squeezed_vacuum_log_negativity() {
        let s = SingleModeState::squeezed_vacuum(1.0).unwrap();
        let inv = crate::gaussian::mix(&s, 0.0, &BeamSplitter::balanced())
            .unwrap()
            .invariants();
        let lt = crate::gaussian::ppt_eigenvalue(&inv).unwrap();
        assert!(lt < 0.5);
        assert_abs_diff_eq!(
            log_negativity(&inv).unwrap(),
            -(2.0 * lt).ln(),
            epsilon = 1e-15
        );
        assert!(log_negativity(&inv).unwrap() > 0.0);
    }

    #[test]
    fn thermal_pairs_never_entangle() {
        for (nt, n2, tau) in [(1.0, 3.0, 0.5), (10.0, 0.0, 0.2), (0.1, 5.0, 0.9)] {
            let r = report(0.0, nt, n2, tau);
            assert!(!r.entangled);
            assert_eq!(r.log_negativity, 0.0);
        }
    }

    #[test]
    fn balanced_discord_is_symmetric() {
        let r = report(0.7, 1.3, 0.0, 0.5);
        assert_abs_diff_eq!(r.discord_1g2, r.discord_2g1, epsilon = 1e-10);
    }

    #[test]
    fn bits_rescale_entropic_fields_only() {
        let r = report(0.7, 0.2, 0.1, 0.4);
        let b = r.in_bits();
        assert_abs_diff_eq!(b.discord_1g2 * LN_2, r.discord_1g2, epsilon = 1e-15);
        assert_eq!(b.ppt_lambda_minus, r.ppt_lambda_minus);
    }
}
