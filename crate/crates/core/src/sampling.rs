//! Seeded random ensembles of mixing configurations.
//!
//! All randomness comes from ChaCha8 seeded with a 64-bit value. Independent
//! streams for the same seed are obtained with [`substream`], so a seed
//! fully determines every table this crate produces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator for `seed`.
pub fn substream(seed: u64, stream: u64) -> SweepRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Log-uniform draw on `[lo, hi]`, `0 < lo ≤ hi`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.random::<f64>()).exp()
}

/// Law for the reference-port photon number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceLaw {
    Vacuum,
    Fixed(f64),
    LogUniform { min: f64, max: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauLaw {
    Uniform,
    Fixed(f64),
}

/// Sampling law: `n_s`, `n_t` log-uniform, reference and `τ` per their laws.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingLaw {
    pub ns: (f64, f64),
    pub nt: (f64, f64),
    pub reference: ReferenceLaw,
    pub tau: TauLaw,
}

impl Default for SamplingLaw {
    /// `n_s, n_t ∈ [10⁻³, 10²]` log-uniform, vacuum reference, `τ ~ U[0, 1]`.
    fn default() -> Self {
        Self {
            ns: (1e-3, 1e2),
            nt: (1e-3, 1e2),
            reference: ReferenceLaw::Vacuum,
            tau: TauLaw::Uniform,
        }
    }
}

impl SamplingLaw {
    pub fn thermal_reference() -> Self {
        Self {
            reference: ReferenceLaw::LogUniform {
                min: 1e-3,
                max: 1e2,
            },
            ..Self::default()
        }
    }
}

/// One mixing configuration `(n_s, n_t, n₂, τ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingSample {
    pub n_s: f64,
    pub n_t: f64,
    pub n2: f64,
    pub tau: f64,
}

pub fn draw<R: Rng>(rng: &mut R, law: &SamplingLaw) -> MixingSample {
    let n_s = log_uniform(rng, law.ns.0, law.ns.1);
    let n_t = log_uniform(rng, law.nt.0, law.nt.1);
    let n2 = match law.reference {
        ReferenceLaw::Vacuum => 0.0,
        ReferenceLaw::Fixed(v) => v,
        ReferenceLaw::LogUniform { min, max } => log_uniform(rng, min, max),
    };
    let tau = match law.tau {
        TauLaw::Uniform => rng.random::<f64>(),
        TauLaw::Fixed(t) => t,
    };
    MixingSample { n_s, n_t, n2, tau }
}

/// `count` samples drawn sequentially from `rng(seed)`.
pub fn draw_many(seed: u64, law: &SamplingLaw, count: usize) -> Vec<MixingSample> {
    let mut r = rng(seed);
    (0..count).map(|_| draw(&mut r, law)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_samples() {
        let law = SamplingLaw::thermal_reference();
        assert_eq!(draw_many(7, &law, 50), draw_many(7, &law, 50));
        assert_ne!(draw_many(7, &law, 50), draw_many(8, &law, 50));
    }

    #[test]
    fn substreams_differ() {
        let a: u64 = substream(1, 0).random();
        let b: u64 = substream(1, 1).random();
        assert_ne!(a, b);
    }

    #[test]
    fn draws_respect_ranges() {
        let law = SamplingLaw::default();
        for s in draw_many(3, &law, 2000) {
            assert!((1e-3..=1e2).contains(&s.n_s));
            assert!((1e-3..=1e2).contains(&s.n_t));
            assert_eq!(s.n2, 0.0);
            assert!((0.0..1.0).contains(&s.tau));
        }
    }
}
