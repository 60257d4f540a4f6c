//! Chambolle–Pock primal-dual iteration for
//! `min λ‖x‖₁ + ½‖x‖²  s.t.  ‖A x − b^δ‖_p ≤ δ`,
//! used as an independent reference for the BPSFP limits.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use crate::error::{check_dim, Error, Result};
use crate::linops::{operator_norm, LinearOperator};
use crate::objectives::shrink;
use crate::projections::{project_orthogonal, RangeSet};
use crate::solver::HISTORY_COLUMNS;
use crate::vector::{norm1, norm2_sq, sub, Norm};

/// `prox_{τF}(z)` for `F = λ‖·‖₁ + ½‖·‖²`, i.e. `S_{τλ}(z)/(1 + τ)`.
pub fn prox_f(z: &[f64], tau: f64, lambda: f64) -> Vec<f64> {
    z.iter()
        .map(|&v| shrink(v, tau * lambda) / (1.0 + tau))
        .collect()
}

/// `prox_{σG}(y)` for `G(y) = δ‖y‖_{p*} + ⟨b, y⟩`, the conjugate of the
/// indicator of `{‖z − b‖_p ≤ δ}`: `y − σ·P_ball(y/σ)`.
pub fn prox_g(y: &[f64], sigma: f64, b: &[f64], delta: f64, p: Norm) -> Result<Vec<f64>> {
    check_dim(b.len(), y.len())?;
    let ball = RangeSet::norm_ball(p, b.to_vec(), delta)?;
    let scaled: Vec<f64> = y.iter().map(|v| v / sigma).collect();
    let proj = project_orthogonal(&ball, &scaled)?;
    Ok(y.iter().zip(&proj).map(|(v, q)| v - sigma * q).collect())
}

#[derive(Debug, Clone)]
pub struct PdConfig {
    pub lambda: f64,
    pub op: Arc<dyn LinearOperator>,
    pub b_delta: Vec<f64>,
    pub delta: f64,
    pub norm: Norm,
    /// `None` picks `0.99/‖A‖`.
    pub tau: Option<f64>,
    /// `None` picks `0.99/‖A‖`.
    pub sigma: Option<f64>,
    pub max_iterations: usize,
    /// Stop once the primal and dual fixed-point residuals both fall below
    /// this value. `None` always runs `max_iterations`.
    pub tolerance: Option<f64>,
    /// Keep every `record_every`-th iterate in the history; 0 keeps none.
    pub record_every: usize,
}

impl PdConfig {
    pub fn new(
        lambda: f64,
        op: Arc<dyn LinearOperator>,
        b_delta: Vec<f64>,
        delta: f64,
        norm: Norm,
    ) -> Self {
        Self {
            lambda,
            op,
            b_delta,
            delta,
            norm,
            tau: None,
            sigma: None,
            max_iterations: 20_000,
            tolerance: None,
            record_every: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdRecord {
    pub k: usize,
    /// `F(x_k)`.
    pub objective: f64,
    /// `‖A x_k − b^δ‖_p − δ`.
    pub feasibility: f64,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone)]
pub struct PdResult {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub history: Vec<PdRecord>,
    pub iterations: usize,
    pub converged: bool,
    pub tau: f64,
    pub sigma: f64,
}

pub fn elastic_net_value(x: &[f64], lambda: f64) -> f64 {
    lambda * norm1(x) + 0.5 * norm2_sq(x)
}

/// Runs the iteration from `x₀ = 0`, `y₀ = 0`:
/// `x_k = prox_{τF}(x_{k−1} − τAᵀy_{k−1})`,
/// `y_k = prox_{σG}(y_{k−1} + σA(2x_k − x_{k−1}))`.
pub fn run_pd(config: &PdConfig) -> Result<PdResult> {
    let op = config.op.as_ref();
    check_dim(op.rows(), config.b_delta.len())?;
    if !(config.lambda >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be nonnegative, got {}",
            config.lambda
        )));
    }
    let norm = operator_norm(op).value;
    let default_step = if norm > 0.0 { 0.99 / norm } else { 1.0 };
    let tau = config.tau.unwrap_or(default_step);
    let sigma = config.sigma.unwrap_or(default_step);
    if !(tau > 0.0 && sigma > 0.0) {
        return Err(Error::InvalidParameter(
            "step sizes must be positive".into(),
        ));
    }
    let bound = if norm > 0.0 {
        1.0 / (norm * norm)
    } else {
        f64::INFINITY
    };
    if tau * sigma >= bound {
        return Err(Error::StepSizeViolation {
            product: tau * sigma,
            bound,
        });
    }

    let (m, n) = (op.rows(), op.cols());
    let start = Instant::now();
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; m];
    let mut ax = vec![0.0; m];
    let mut aty = vec![0.0; n];
    let mut ax_new = vec![0.0; m];
    let mut aty_new = vec![0.0; n];
    let mut history = Vec::new();
    let record = |k: usize, x: &[f64], ax: &[f64], history: &mut Vec<PdRecord>| {
        history.push(PdRecord {
            k,
            objective: elastic_net_value(x, config.lambda),
            feasibility: config.norm.eval(&sub(ax, &config.b_delta)) - config.delta,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    };
    if config.record_every > 0 {
        record(0, &x, &ax, &mut history);
    }

    let mut converged = false;
    let mut k = 0;
    while k < config.max_iterations {
        k += 1;
        let z: Vec<f64> = x.iter().zip(&aty).map(|(xi, gi)| xi - tau * gi).collect();
        let x_new = prox_f(&z, tau, config.lambda);
        op.apply_into(&x_new, &mut ax_new);
        let v: Vec<f64> = y
            .iter()
            .zip(ax_new.iter().zip(&ax))
            .map(|(yi, (an, ao))| yi + sigma * (2.0 * an - ao))
            .collect();
        let y_new = prox_g(&v, sigma, &config.b_delta, config.delta, config.norm)?;
        op.apply_adjoint_into(&y_new, &mut aty_new);

        if let Some(tol) = config.tolerance {
            // fixed-point residuals of the saddle-point iteration
            let primal: f64 = (0..n)
                .map(|j| ((x[j] - x_new[j]) / tau - (aty[j] - aty_new[j])).powi(2))
                .sum::<f64>()
                .sqrt();
            let dual: f64 = (0..m)
                .map(|i| ((y[i] - y_new[i]) / sigma - (ax[i] - ax_new[i])).powi(2))
                .sum::<f64>()
                .sqrt();
            converged = primal <= tol && dual <= tol;
        }
        x = x_new;
        y = y_new;
        std::mem::swap(&mut ax, &mut ax_new);
        std::mem::swap(&mut aty, &mut aty_new);
        if config.record_every > 0
            && (k % config.record_every == 0 || converged || k == config.max_iterations)
        {
            record(k, &x, &ax, &mut history);
        }
        if converged {
            break;
        }
    }
    Ok(PdResult {
        x,
        y,
        history,
        iterations: k,
        converged,
        tau,
        sigma,
    })
}

/// PD history in the solver's CSV layout; `max_violation` holds the signed
/// feasibility value and `step_size` the primal step `τ`.
pub fn pd_history_csv(history: &[PdRecord], tau: f64) -> String {
    let mut out = HISTORY_COLUMNS.join(",");
    out.push('\n');
    for r in history {
        let _ = writeln!(
            out,
            "{},,{},,{},{},{}",
            r.k, tau, r.feasibility, r.objective, r.elapsed_ms
        );
    }
    out
}

pub fn write_pd_history_csv(path: impl AsRef<Path>, history: &[PdRecord], tau: f64) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, pd_history_csv(history, tau)).map_err(|e| Error::io(path, e))
}
