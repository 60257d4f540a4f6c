//! Objectives that couple coordinates: group sparsity with
//! `λ Σ_G |x_G|₂ + ½‖x‖²` and flat groups with `λ Σ_G |G| max_{j∈G} |x_j| + ½‖x‖²`.
//! The exact step falls back to bracketing and bisection on `g'`.
//!
//! `cargo run --release --example grouped_max`

use std::sync::Arc;

use bpsfp::linops::{DenseMatrix, LinearOperator};
use bpsfp::objectives::{ElasticNet, GroupElasticNet, GroupedMax, Groups, Objective};
use bpsfp::projections::RangeSet;
use bpsfp::solver::{run, Constraint, SolverConfig, StepRule};
use bpsfp::vector::{norm2, sub};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn main() -> bpsfp::Result<()> {
    let (m, groups, size) = (40, 16, 4);
    let n = groups * size;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let op: Arc<dyn LinearOperator> = Arc::new(DenseMatrix::from_rows(&rows)?);

    // two active groups; the second is flat
    let mut x_true = vec![0.0; n];
    for j in 0..size {
        x_true[3 * size + j] = StandardNormal.sample(&mut rng);
        x_true[9 * size + j] = 1.0;
    }
    let b = op.apply(&x_true);

    let sizes = vec![size; groups];
    let objectives: Vec<(&str, Arc<dyn Objective>)> = vec![
        ("elastic net", Arc::new(ElasticNet::new(n, 1.0)?)),
        (
            "group l2",
            Arc::new(GroupElasticNet::new(1.0, Groups::contiguous(&sizes)?)?),
        ),
        (
            "grouped max",
            Arc::new(GroupedMax::new(1.0, Groups::contiguous(&sizes)?)?),
        ),
    ];
    for (name, obj) in objectives {
        let mut cfg = SolverConfig::new(
            obj,
            vec![Constraint::difficult(
                op.clone(),
                RangeSet::Point(b.clone()),
            )],
        );
        cfg.step = StepRule::Exact;
        cfg.max_iterations = 50_000;
        cfg.residual_tolerance = 1e-8;
        let r = run(cfg)?;
        let x = r.pair.x();
        let active = (0..groups)
            .filter(|g| x[g * size..(g + 1) * size].iter().any(|v| v.abs() > 1e-6))
            .count();
        println!(
            "{name:<12} {:>6} iterations  active groups = {active:>2}  |x - x_true| = {:.2e}",
            r.iterations,
            norm2(&sub(x, &x_true))
        );
    }
    Ok(())
}
