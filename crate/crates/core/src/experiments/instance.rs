use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linops::{DenseMatrix, LinearOperator, PartialDct};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    /// i.i.d. standard normal entries.
    Gaussian,
    /// i.i.d. ±1 entries.
    Bernoulli,
    /// Randomly chosen rows of the orthonormal DCT-II.
    PartialDct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Amplitude {
    Gaussian,
    /// ±1.
    Bernoulli,
    /// Magnitudes log-uniform on `[1, 1e5]` with random signs.
    LargeDynamicRange,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub m: usize,
    pub n: usize,
    pub sparsity: usize,
    pub matrix: MatrixKind,
    pub amplitude: Amplitude,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn gaussian(m: usize, n: usize, sparsity: usize, seed: u64) -> Self {
        Self {
            m,
            n,
            sparsity,
            matrix: MatrixKind::Gaussian,
            amplitude: Amplitude::Gaussian,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m > self.n {
            return Err(Error::InvalidParameter(format!(
                "need 0 < m <= n, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        if self.sparsity > self.m {
            return Err(Error::InvalidParameter(format!(
                "sparsity {} exceeds m = {}",
                self.sparsity, self.m
            )));
        }
        Ok(())
    }
}

/// A sparse test problem `A x† = b`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub matrix: Arc<DenseMatrix>,
    pub x_dagger: Vec<f64>,
    pub b: Vec<f64>,
}

impl Instance {
    pub fn op(&self) -> Arc<dyn LinearOperator> {
        self.matrix.clone()
    }
}

/// Draws the matrix, then the support, then the amplitudes from one
/// ChaCha8 stream seeded by `spec.seed`.
pub fn generate_instance(spec: &InstanceSpec) -> Result<Instance> {
    spec.validate()?;
    let (m, n) = (spec.m, spec.n);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let matrix = match spec.matrix {
        MatrixKind::Gaussian => {
            let data = (0..m * n)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect();
            DenseMatrix::from_row_major(m, n, data)?
        }
        MatrixKind::Bernoulli => {
            let data = (0..m * n)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            DenseMatrix::from_row_major(m, n, data)?
        }
        MatrixKind::PartialDct => PartialDct::random(n, m, &mut rng)?.as_dense().clone(),
    };
    let mut support = sample(&mut rng, n, spec.sparsity).into_vec();
    support.sort_unstable();
    let mut x_dagger = vec![0.0; n];
    for j in support {
        x_dagger[j] = match spec.amplitude {
            Amplitude::Gaussian => rng.sample(StandardNormal),
            Amplitude::Bernoulli => sign(&mut rng),
            Amplitude::LargeDynamicRange => {
                let magnitude = 10f64.powf(rng.random_range(0.0..=5.0));
                magnitude * sign(&mut rng)
            }
        };
    }
    let b = matrix.apply(&x_dagger);
    Ok(Instance {
        matrix: Arc::new(matrix),
        x_dagger,
        b,
    })
}

fn sign(rng: &mut impl Rng) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_support() {
        let inst = generate_instance(&InstanceSpec::gaussian(5, 10, 0, 1)).unwrap();
        assert!(inst.x_dagger.iter().all(|&v| v == 0.0));
        assert!(inst.b.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn exact_sparsity_and_determinism() {
        for kind in [
            MatrixKind::Gaussian,
            MatrixKind::Bernoulli,
            MatrixKind::PartialDct,
        ] {
            let spec = InstanceSpec {
                matrix: kind,
                ..InstanceSpec::gaussian(20, 40, 7, 3)
            };
            let a = generate_instance(&spec).unwrap();
            let b = generate_instance(&spec).unwrap();
            assert_eq!(a.x_dagger.iter().filter(|&&v| v != 0.0).count(), 7);
            assert_eq!(a.b, b.b);
            assert_eq!(a.matrix.data(), b.matrix.data());
        }
    }

    #[test]
    fn bernoulli_entries() {
        let spec = InstanceSpec {
            matrix: MatrixKind::Bernoulli,
            amplitude: Amplitude::Bernoulli,
            ..InstanceSpec::gaussian(10, 20, 5, 9)
        };
        let inst = generate_instance(&spec).unwrap();
        assert!(inst.matrix.data().iter().all(|&v| v.abs() == 1.0));
        assert!(inst.x_dagger.iter().all(|&v| v == 0.0 || v.abs() == 1.0));
    }

    #[test]
    fn large_dynamic_range_statistics() {
        let spec = InstanceSpec {
            amplitude: Amplitude::LargeDynamicRange,
            ..InstanceSpec::gaussian(2000, 4000, 2000, 5)
        };
        let inst = generate_instance(&InstanceSpec {
            m: 2000,
            n: 2000,
            ..spec
        })
        .unwrap();
        let logs: Vec<f64> = inst.x_dagger.iter().map(|v| v.abs().log10()).collect();
        assert!(logs.iter().all(|&l| (0.0..=5.0).contains(&l)));
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        let var = logs.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / logs.len() as f64;
        // uniform on [0, 5]: mean 2.5, variance 25/12
        assert!((mean - 2.5).abs() < 0.1, "{mean}");
        assert!((var - 25.0 / 12.0).abs() < 0.15, "{var}");
        let positive = inst.x_dagger.iter().filter(|&&v| v > 0.0).count();
        assert!((positive as f64 / 2000.0 - 0.5).abs() < 0.05);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(generate_instance(&InstanceSpec::gaussian(10, 5, 1, 0)).is_err());
        assert!(generate_instance(&InstanceSpec::gaussian(5, 10, 6, 0)).is_err());
    }
}
