//! Sparse recovery from `A x = b` with the linearized Bregman preset and
//! each step size rule.
//!
//! `cargo run --release --example linearized_bregman`

use bpsfp::experiments::{resolve_instance, InstanceSpec, LambdaChoice};
use bpsfp::solver::{preset, run, Preset, StepRule};
use bpsfp::vector::dist_inf;

fn main() -> bpsfp::Result<()> {
    let spec = InstanceSpec::gaussian(100, 200, 10, 0);
    let resolved = resolve_instance(&spec, &LambdaChoice::default())?;
    let inst = &resolved.instance;
    println!("m = 100, n = 200, s = 10, lambda = {:.4}", resolved.lambda);

    for rule in [
        StepRule::Constant,
        StepRule::Dynamic,
        StepRule::Exact,
        StepRule::inexact(2.0),
    ] {
        let mut cfg = preset(
            Preset::LinearizedBregman,
            inst.op(),
            &inst.b,
            Some(resolved.lambda),
        )?;
        cfg.step = rule;
        cfg.max_iterations = 100_000;
        let result = run(cfg)?;
        println!(
            "{:>9}: {:>6} iterations ({:?}), |x - x_true|_inf = {:.2e}",
            rule.name(),
            result.iterations,
            result.reason,
            dist_inf(result.pair.x(), &inst.x_dagger)
        );
    }
    Ok(())
}
