use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{norm2, sub, Norm};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NoiseModel {
    /// `count` entries replaced by the largest or smallest entry of `b`.
    Impulsive { count: usize },
    /// Additive i.i.d. uniform noise on `[−range, range]`.
    Uniform { range: f64 },
    /// Additive Gaussian noise with `‖b^δ − b‖₂ = level·‖b‖₂`.
    Gaussian { level: f64 },
}

impl NoiseModel {
    /// Norm in which `δ` is measured.
    pub fn norm(&self) -> Norm {
        match self {
            NoiseModel::Impulsive { .. } => Norm::L1,
            NoiseModel::Uniform { .. } => Norm::Linf,
            NoiseModel::Gaussian { .. } => Norm::L2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoisyData {
    pub b_delta: Vec<f64>,
    /// `‖b^δ − b‖` in [`NoisyData::norm`].
    pub delta: f64,
    pub norm: Norm,
}

pub fn inject_noise(b: &[f64], model: &NoiseModel, seed: u64) -> Result<NoisyData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b_delta = b.to_vec();
    match *model {
        NoiseModel::Impulsive { count } => {
            if count > b.len() {
                return Err(Error::InvalidParameter(format!(
                    "cannot corrupt {count} of {} entries",
                    b.len()
                )));
            }
            let hi = b.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let lo = b.iter().copied().fold(f64::INFINITY, f64::min);
            let mut idx = sample(&mut rng, b.len(), count).into_vec();
            idx.sort_unstable();
            for i in idx {
                let (pick, other) = if rng.random::<bool>() {
                    (hi, lo)
                } else {
                    (lo, hi)
                };
                // an extreme entry drawn onto itself takes the other extreme
                b_delta[i] = if pick == b[i] { other } else { pick };
            }
        }
        NoiseModel::Uniform { range } => {
            if !(range >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "noise range must be nonnegative, got {range}"
                )));
            }
            if range > 0.0 {
                for v in &mut b_delta {
                    *v += rng.random_range(-range..=range);
                }
            }
        }
        NoiseModel::Gaussian { level } => {
            if !(level >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "noise level must be nonnegative, got {level}"
                )));
            }
            let e: Vec<f64> = (0..b.len()).map(|_| rng.sample(StandardNormal)).collect();
            let scale = level * norm2(b) / norm2(&e);
            if scale > 0.0 && scale.is_finite() {
                for (v, ei) in b_delta.iter_mut().zip(&e) {
                    *v += scale * ei;
                }
            }
        }
    }
    let norm = model.norm();
    let delta = norm.eval(&sub(&b_delta, b));
    Ok(NoisyData {
        b_delta,
        delta,
        norm,
    })
}
