//! Row-action methods: classical Kaczmarz finds the minimum-norm solution,
//! sparse Kaczmarz the sparse one.
//!
//! `cargo run --release --example kaczmarz`

use bpsfp::experiments::{generate_instance, InstanceSpec};
use bpsfp::solver::{preset, run, ControlSequence, Preset};
use bpsfp::vector::{dist_inf, norm1, norm2};

fn main() -> bpsfp::Result<()> {
    let inst = generate_instance(&InstanceSpec::gaussian(60, 120, 5, 7))?;
    println!(
        "x_true: |x|_1 = {:.3}, |x|_2 = {:.3}",
        norm1(&inst.x_dagger),
        norm2(&inst.x_dagger)
    );

    for (kind, lambda) in [
        (Preset::Kaczmarz, None),
        (Preset::SparseKaczmarz, Some(2.0)),
    ] {
        for control in [ControlSequence::Cyclic, ControlSequence::RandomUniform(1)] {
            let mut cfg = preset(kind, inst.op(), &inst.b, lambda)?;
            cfg.control = control.clone();
            cfg.max_iterations = 500_000;
            cfg.residual_tolerance = 1e-8;
            let r = run(cfg)?;
            let x = r.pair.x();
            println!(
                "{:<15} {:<16} {:>7} steps  |x|_1 = {:.3}  |x|_2 = {:.3}  err_inf = {:.2e}",
                kind.name(),
                format!("{control:?}"),
                r.iterations,
                norm1(x),
                norm2(x),
                dist_inf(x, &inst.x_dagger)
            );
        }
    }
    Ok(())
}
