//! The primal-dual reference solver for `min λ‖x‖₁ + ½‖x‖²  s.t.
//! ‖A x − b^δ‖_p ≤ δ`, with its objective and feasibility trace.
//!
//! `cargo run --release --example primal_dual`

use bpsfp::comparator::{run_pd, PdConfig};
use bpsfp::experiments::{generate_instance, inject_noise, InstanceSpec, NoiseModel};

fn main() -> bpsfp::Result<()> {
    let inst = generate_instance(&InstanceSpec::gaussian(80, 160, 6, 4))?;
    let noisy = inject_noise(&inst.b, &NoiseModel::Gaussian { level: 0.02 }, 9)?;
    let mut cfg = PdConfig::new(1.0, inst.op(), noisy.b_delta, noisy.delta, noisy.norm);
    cfg.max_iterations = 5000;
    cfg.record_every = 1000;
    let result = run_pd(&cfg)?;
    println!("tau = {:.4}, sigma = {:.4}", result.tau, result.sigma);
    for r in &result.history {
        println!(
            "k = {:>5}  F = {:.6}  feasibility = {:+.2e}",
            r.k, r.objective, r.feasibility
        );
    }
    Ok(())
}
