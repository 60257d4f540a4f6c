//! Simple constraints next to a difficult one: a sparse, nonnegative,
//! bounded solution of `A x = b`. Simple sets are handled by exact Bregman
//! projections, the equation by linesearch steps.
//!
//! `cargo run --release --example box_constraints`

use std::sync::Arc;

use bpsfp::experiments::{generate_instance, InstanceSpec};
use bpsfp::objectives::{ElasticNet, Objective};
use bpsfp::projections::RangeSet;
use bpsfp::solver::{run, Constraint, SolverConfig, StepRule};
use bpsfp::vector::{dist_inf, norm2, sub};

fn main() -> bpsfp::Result<()> {
    let inst = generate_instance(&InstanceSpec::gaussian(30, 80, 4, 2))?;
    let x_true: Vec<f64> = inst.x_dagger.iter().map(|v| v.abs().min(1.5)).collect();
    let op = inst.op();
    let b = op.apply(&x_true);
    let n = x_true.len();

    let objective: Arc<dyn Objective> = Arc::new(ElasticNet::new(n, 1.0)?);
    let constraints = vec![
        Constraint::difficult(op.clone(), RangeSet::Point(b.clone())),
        Constraint::simple(RangeSet::NonnegCone),
        Constraint::simple(RangeSet::boxed(vec![-1.0; n], vec![1.5; n])?),
    ];
    let mut cfg = SolverConfig::new(objective, constraints);
    cfg.step = StepRule::Exact;
    cfg.max_iterations = 300_000;
    cfg.residual_tolerance = 1e-8;
    let result = run(cfg)?;

    let x = result.pair.x();
    println!("{} steps ({:?})", result.iterations, result.reason);
    println!("residual |Ax - b| = {:.2e}", norm2(&sub(&op.apply(x), &b)));
    println!(
        "min x = {:.2e}, max x = {:.4}",
        x.iter().cloned().fold(f64::INFINITY, f64::min),
        x.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    );
    println!("|x - x_true|_inf = {:.2e}", dist_inf(x, &x_true));
    Ok(())
}
