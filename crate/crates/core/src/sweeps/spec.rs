use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SPEC_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// `count` points from `min` to `max`, both included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Range {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            scale: Scale::Linear,
        }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Self {
            min,
            max,
            count,
            scale: Scale::Log,
        }
    }

    pub fn validate(&self, field: &str) -> Result<()> {
        if self.count < 2 {
            return Err(invalid(field, "count must be at least 2"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min < 0.0 {
            return Err(invalid(field, "bounds must be finite and nonnegative"));
        }
        if self.max < self.min {
            return Err(invalid(field, "max must not be below min"));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(invalid(field, "log scale needs min > 0"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i + 1 == self.count {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

fn invalid(field: &str, why: &str) -> Error {
    Error::InvalidSpec(format!("`{field}`: {why}"))
}

fn check_tau(field: &str, tau: f64) -> Result<()> {
    if (0.0..=1.0).contains(&tau) {
        Ok(())
    } else {
        Err(invalid(field, "transmissivity must lie in [0, 1]"))
    }
}

fn check_photons(field: &str, n: f64) -> Result<()> {
    if n.is_finite() && n >= 0.0 {
        Ok(())
    } else {
        Err(invalid(
            field,
            "photon number must be finite and nonnegative",
        ))
    }
}

/// Input family at fixed mean photon number `N = n_s + n_t + 2 n_s n_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Thermal,
    SqueezedVacuum,
    /// On the P-classicality boundary, `n_s = n_t²/(1+2n_t)`.
    Threshold,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Thermal => "thermal",
            Family::SqueezedVacuum => "squeezed_vacuum",
            Family::Threshold => "threshold",
        }
    }

    /// `(n_s, n_t)` carrying `n1` photons in total.
    pub fn photons(&self, n1: f64) -> (f64, f64) {
        match self {
            Family::Thermal => (0.0, n1),
            Family::SqueezedVacuum => (n1, 0.0),
            Family::Threshold => {
                // n1 = n_t + n_t² on the boundary
                let nt = 2.0 * n1 / (1.0 + (1.0 + 4.0 * n1).sqrt());
                (crate::thresholds::p_threshold_ns(nt), nt)
            }
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "thermal" => Ok(Family::Thermal),
            "squeezed_vacuum" | "squeezed" => Ok(Family::SqueezedVacuum),
            "threshold" => Ok(Family::Threshold),
            other => Err(Error::InvalidSpec(format!(
                "`family`: unknown family `{other}`"
            ))),
        }
    }
}

/// Reference mode for scatter sampling.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScatterReference {
    #[default]
    Vacuum,
    /// `n₂` log-uniform on the same interval as `n_s` and `n_t`.
    Random,
}

fn half() -> f64 {
    0.5
}

fn imbalance_points() -> usize {
    101
}

fn default_taus() -> Vec<f64> {
    vec![0.5]
}

/// Which imbalances `d = n₁ − n₂` an imbalance sweep covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImbalanceSpan {
    /// `d ∈ [−N, N]`.
    #[default]
    Full,
    /// `d ∈ [0, N]`: mode 1 holds at least half the photons.
    Nonnegative,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepJob {
    /// Grid over `(n_s, n_t)` plus the thermal, squeezed-vacuum,
    /// P-threshold and minimum-discord curves.
    Surface {
        ns: Range,
        nt: Range,
        #[serde(default)]
        n2: f64,
        #[serde(default = "half")]
        tau: f64,
    },
    TauScan {
        family: Family,
        #[serde(rename = "N")]
        total: f64,
        tau: Range,
        #[serde(default)]
        n2: f64,
    },
    Scatter {
        samples: usize,
        #[serde(default)]
        reference: ScatterReference,
        /// Fixed transmissivity; uniform on `[0, 1]` when absent.
        #[serde(default)]
        tau: Option<f64>,
    },
    Imbalance {
        #[serde(rename = "N")]
        total: f64,
        #[serde(default = "imbalance_points")]
        points: usize,
        #[serde(default = "default_taus")]
        taus: Vec<f64>,
        #[serde(default)]
        span: ImbalanceSpan,
    },
    Asymptote {
        family: Family,
        #[serde(rename = "N")]
        total: Range,
        #[serde(default = "half")]
        tau: f64,
        #[serde(default)]
        n2: f64,
    },
    ThresholdCurve {
        n1: Range,
        n2: Vec<f64>,
        #[serde(default = "half")]
        tau: f64,
    },
}

/// A serializable sweep description, the schema of spec files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub version: u32,
    #[serde(flatten)]
    pub job: SweepJob,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Report entropic columns in bits instead of nats.
    #[serde(default)]
    pub bits: bool,
}

impl SweepSpec {
    pub fn new(job: SweepJob) -> Self {
        Self {
            version: SPEC_VERSION,
            job,
            seed: None,
            bits: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)
            .map_err(|e| Error::InvalidSpec(format!("spec file: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn kind(&self) -> &'static str {
        match self.job {
            SweepJob::Surface { .. } => "surface",
            SweepJob::TauScan { .. } => "tau_scan",
            SweepJob::Scatter { .. } => "scatter",
            SweepJob::Imbalance { .. } => "imbalance",
            SweepJob::Asymptote { .. } => "asymptote",
            SweepJob::ThresholdCurve { .. } => "threshold_curve",
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.version != SPEC_VERSION {
            return Err(invalid(
                "version",
                &format!(
                    "unsupported version {}, expected {SPEC_VERSION}",
                    self.version
                ),
            ));
        }
        match &self.job {
            SweepJob::Surface { ns, nt, n2, tau } => {
                ns.validate("ns")?;
                nt.validate("nt")?;
                check_photons("n2", *n2)?;
                check_tau("tau", *tau)
            }
            SweepJob::TauScan { total, tau, n2, .. } => {
                check_photons("N", *total)?;
                check_photons("n2", *n2)?;
                tau.validate("tau")?;
                if tau.max > 1.0 {
                    return Err(invalid("tau", "transmissivity must lie in [0, 1]"));
                }
                Ok(())
            }
            SweepJob::Scatter { samples, tau, .. } => {
                if self.seed.is_none() {
                    return Err(invalid("seed", "scatter sweeps need an explicit seed"));
                }
                if *samples == 0 {
                    return Err(invalid("samples", "must be positive"));
                }
                tau.map_or(Ok(()), |t| check_tau("tau", t))
            }
            SweepJob::Imbalance {
                total,
                points,
                taus,
                ..
            } => {
                check_photons("N", *total)?;
                if *points < 2 {
                    return Err(invalid("points", "must be at least 2"));
                }
                if taus.is_empty() {
                    return Err(invalid("taus", "needs at least one transmissivity"));
                }
                taus.iter().try_for_each(|&t| check_tau("taus", t))
            }
            SweepJob::Asymptote { total, tau, n2, .. } => {
                total.validate("N")?;
                check_photons("n2", *n2)?;
                check_tau("tau", *tau)
            }
            SweepJob::ThresholdCurve { n1, n2, tau } => {
                n1.validate("n1")?;
                if n2.is_empty() {
                    return Err(invalid("n2", "needs at least one reference photon number"));
                }
                n2.iter().try_for_each(|&n| check_photons("n2", n))?;
                if *tau <= 0.0 || *tau >= 1.0 {
                    return Err(invalid("tau", "threshold curves need 0 < tau < 1"));
                }
                Ok(())
            }
        }
    }
}
