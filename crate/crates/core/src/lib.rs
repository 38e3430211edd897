//! Gaussian states mixed with a thermal reference at a beam splitter:
//! nonclassical depth, Gaussian discord, PPT entanglement, the thresholds
//! relating them, and sweep engines that tabulate them.
//!
//! Covariance matrices use the convention vacuum = `diag(1/2, 1/2)`; see
//! [`gaussian`]. Entropic quantities are in nats.

pub mod checks;
pub mod error;
pub mod gaussian;
pub mod measures;
pub mod optimize;
pub mod sampling;
pub mod sweeps;
pub mod thresholds;

pub use error::{Error, Result};
pub use gaussian::{
    apply_beam_splitter, cm_single_mode, cm_thermal, mix, mix_invariants, ppt_eigenvalue,
    symplectic_eigenvalues, symplectic_invariants, BeamSplitter, CovMat2, CovMat4, Invariants,
    SingleModeState,
};
pub use measures::{
    emin_closed_form, emin_oracle, entropy_f, gaussian_discord, log_negativity, mutual_information,
    nonclassical_depth, p_classical, Direction, MeasureReport, Party,
};
pub use thresholds::{
    effective_nc, effective_nc_at_tau, p_threshold_ns, p_threshold_nt, sep_threshold_ns,
    sep_threshold_vs_p_threshold, EffectiveNC, ThresholdPoint,
};
