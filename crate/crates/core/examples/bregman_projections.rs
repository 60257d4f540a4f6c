//! Bregman projections for the elastic net next to orthogonal ones.
//! The Bregman projection of `x = ∇f*(x*)` keeps zeros where the
//! orthogonal projection fills them in.
//!
//! `cargo run --release --example bregman_projections`

use std::sync::Arc;

use bpsfp::linops::{DenseMatrix, LinearOperator};
use bpsfp::objectives::{ElasticNet, PrimalDualPair};
use bpsfp::projections::{bregman_project, project_orthogonal, RangeSet};

fn show(label: &str, v: &[f64]) {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:+.3}")).collect();
    println!("  {label:<10} [{}]", parts.join(", "));
}

fn main() -> bpsfp::Result<()> {
    let obj = ElasticNet::new(4, 1.0)?;
    let pair = PrimalDualPair::from_dual(&obj, vec![2.5, -0.5, 0.3, -1.8])?;
    println!("x* = {:?}", pair.x_star());
    show("x", pair.x());

    let two_rows: Arc<dyn LinearOperator> = Arc::new(DenseMatrix::from_rows(&[
        vec![1.0, 1.0, 1.0, 1.0],
        vec![0.0, 1.0, -1.0, 0.0],
    ])?);
    let sets = [
        (
            "hyperplane <1,x> = 3",
            RangeSet::hyperplane(vec![1.0; 4], 3.0)?,
        ),
        (
            "halfspace <a,x> <= -1",
            RangeSet::halfspace(vec![0.0, 1.0, 0.0, 1.0], -1.0)?,
        ),
        (
            "box [-0.5, 0.5]",
            RangeSet::boxed(vec![-0.5; 4], vec![0.5; 4])?,
        ),
        ("nonnegative orthant", RangeSet::NonnegCone),
        (
            "affine Ax = (1, 0.5)",
            RangeSet::affine(two_rows, vec![1.0, 0.5])?,
        ),
    ];
    for (name, set) in sets {
        println!("{name}");
        show("bregman", bregman_project(&obj, &pair, &set)?.x());
        show("orthogonal", &project_orthogonal(&set, pair.x())?);
    }
    Ok(())
}
