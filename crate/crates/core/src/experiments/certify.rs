use std::sync::Arc;

use crate::comparator::{run_pd, PdConfig};
use crate::error::{check_dim, Error, Result};
use crate::linops::LinearOperator;
use crate::vector::{dist_inf, norm2, norm_inf, sub, Norm};

pub const CERTIFY_ITERATIONS: usize = 50_000;
/// Fixed-point residual at which the reference run may stop early.
pub const CERTIFY_RESIDUAL: f64 = 1e-11;

/// Recovery tolerance `1e−5·(1 + ‖x†‖∞)`.
pub fn certification_tolerance(x_dagger: &[f64]) -> f64 {
    1e-5 * (1.0 + norm_inf(x_dagger))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub lambda: f64,
    /// `‖x_PD − x†‖∞`.
    pub error: f64,
    pub iterations: usize,
}

/// Smallest candidate `λ` for which a long primal-dual run on
/// `min λ‖x‖₁ + ½‖x‖²  s.t.  A x = b` lands within the recovery tolerance
/// of `x†`.
pub fn certify_lambda(
    op: Arc<dyn LinearOperator>,
    x_dagger: &[f64],
    b: &[f64],
    candidates: &[f64],
) -> Result<Certificate> {
    check_dim(op.cols(), x_dagger.len())?;
    check_dim(op.rows(), b.len())?;
    if norm2(&sub(&op.apply(x_dagger), b)) > 1e-9 * (1.0 + norm2(b)) {
        return Err(Error::InvalidParameter(
            "certification needs b = A x†".into(),
        ));
    }
    let mut sorted: Vec<f64> = candidates.iter().copied().filter(|l| *l >= 0.0).collect();
    sorted.sort_by(f64::total_cmp);
    let tol = certification_tolerance(x_dagger);
    for lambda in sorted {
        let mut cfg = PdConfig::new(lambda, op.clone(), b.to_vec(), 0.0, Norm::L2);
        cfg.max_iterations = CERTIFY_ITERATIONS;
        cfg.tolerance = Some(CERTIFY_RESIDUAL * (1.0 + norm2(b)));
        cfg.record_every = 0;
        let res = run_pd(&cfg)?;
        let error = dist_inf(&res.x, x_dagger);
        if error <= tol {
            return Ok(Certificate {
                lambda,
                error,
                iterations: res.iterations,
            });
        }
    }
    Err(Error::CertificationFailed)
}
