use serde::{Deserialize, Serialize};

use super::certify::{certify_lambda, Certificate};
use super::instance::{generate_instance, Instance, InstanceSpec};
use crate::error::{Error, Result};
use crate::vector::norm_inf;

/// How the weight `λ` of `λ‖x‖₁ + ½‖x‖²` is chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaChoice {
    Fixed(f64),
    /// Candidates `multiplier·‖x†‖∞`, certified by the primal-dual
    /// reference. On failure the instance is redrawn with a new seed, at
    /// most `attempts` times in total.
    Certify {
        multipliers: Vec<f64>,
        attempts: usize,
    },
}

impl Default for LambdaChoice {
    fn default() -> Self {
        LambdaChoice::Certify {
            multipliers: vec![1.0, 10.0, 100.0],
            attempts: 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedInstance {
    pub instance: Instance,
    pub lambda: f64,
    /// Seed that produced `instance`.
    pub seed: u64,
    pub certificate: Option<Certificate>,
}

const RESEED_STRIDE: u64 = 1_000_003;

pub fn resolve_instance(spec: &InstanceSpec, choice: &LambdaChoice) -> Result<ResolvedInstance> {
    match choice {
        LambdaChoice::Fixed(lambda) => Ok(ResolvedInstance {
            instance: generate_instance(spec)?,
            lambda: *lambda,
            seed: spec.seed,
            certificate: None,
        }),
        LambdaChoice::Certify {
            multipliers,
            attempts,
        } => {
            for attempt in 0..(*attempts).max(1) as u64 {
                let seed = spec.seed.wrapping_add(attempt * RESEED_STRIDE);
                let instance = generate_instance(&InstanceSpec {
                    seed,
                    ..spec.clone()
                })?;
                let scale = norm_inf(&instance.x_dagger);
                let candidates: Vec<f64> = multipliers.iter().map(|m| m * scale).collect();
                match certify_lambda(instance.op(), &instance.x_dagger, &instance.b, &candidates) {
                    Ok(cert) => {
                        return Ok(ResolvedInstance {
                            lambda: cert.lambda,
                            instance,
                            seed,
                            certificate: Some(cert),
                        })
                    }
                    Err(Error::CertificationFailed) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::CertificationFailed)
        }
    }
}
