//! Bounded noise `|e_i| ≤ r` and the ℓ∞ data ball; the exact step usually
//! needs far fewer iterations than the dynamic one.
//!
//! `cargo run --release --example uniform_noise`

use bpsfp::experiments::{run_noisy_recovery, InstanceSpec, NoiseModel, NoisyConfig};
use bpsfp::solver::StepRule;

fn main() -> bpsfp::Result<()> {
    let mut cfg = NoisyConfig::new(
        InstanceSpec::gaussian(200, 400, 8, 3),
        NoiseModel::Uniform { range: 1.0 },
    );
    cfg.rules = vec![StepRule::Dynamic, StepRule::Exact];
    cfg.max_iterations = 20_000;
    let report = run_noisy_recovery(&cfg)?;
    println!(
        "delta = {:.3} ({:?} ball)",
        report.data.delta, report.data.norm
    );
    for r in &report.runs {
        println!(
            "{:<12} {:>6} iterations ({:?})  err_rel = {:.4}",
            r.label, r.iterations, r.termination, r.err_rel
        );
    }
    Ok(())
}
