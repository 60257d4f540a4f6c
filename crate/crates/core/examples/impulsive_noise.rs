//! Recovery from data with a few large outliers, using the ℓ1 data ball
//! `‖A x − b^δ‖₁ ≤ δ`, compared with a long primal-dual reference run.
//!
//! `cargo run --release --example impulsive_noise`

use bpsfp::experiments::{run_noisy_recovery, InstanceSpec, NoiseModel, NoisyConfig};

fn main() -> bpsfp::Result<()> {
    let mut cfg = NoisyConfig::new(
        InstanceSpec::gaussian(200, 400, 8, 0),
        NoiseModel::Impulsive { count: 10 },
    );
    cfg.max_iterations = 2000;
    let report = run_noisy_recovery(&cfg)?;
    println!(
        "lambda = {:.4}, delta = {:.4}, norm = {:?}",
        report.resolved.lambda, report.data.delta, report.data.norm
    );
    for r in &report.runs {
        println!(
            "{:<12} {:>6} iterations  F = {:.6}  feasibility = {:+.2e}  err_rel = {:.4}{}",
            r.label,
            r.iterations,
            r.objective.last().copied().unwrap_or(f64::NAN),
            r.feasibility.last().copied().unwrap_or(f64::NAN),
            r.err_rel,
            if r.is_reference { "  (reference)" } else { "" }
        );
    }
    Ok(())
}
