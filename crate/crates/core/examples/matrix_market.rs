//! Solving a system stored as a MatrixMarket file, the way `bpsfp solve`
//! does. Pass a `.mtx` path to use your own matrix; the right-hand side is
//! `A x` for `x` with ones at every seventh index.
//!
//! `cargo run --release --example matrix_market [file.mtx]`

use bpsfp::experiments::{run_solve, ProblemSource, SolveConfig};
use bpsfp::linops::{LinearOperator, SparseMatrix};
use bpsfp::solver::{ControlSequence, Preset};
use bpsfp::vector::dist_inf;

fn main() -> bpsfp::Result<()> {
    let path = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            // tridiagonal 40×42 band
            let mut t = Vec::new();
            for i in 0..40 {
                for d in 0..3 {
                    t.push((i, i + d, [1.0, -2.0, 1.0][d] * (1.0 + 0.1 * i as f64)));
                }
            }
            let p = std::env::temp_dir().join("bpsfp_band.mtx");
            SparseMatrix::from_triplets(40, 42, t)?.write_matrix_market(&p)?;
            p
        }
    };
    let a = SparseMatrix::read_matrix_market(&path)?;
    let x_true: Vec<f64> = (0..a.cols())
        .map(|j| if j % 7 == 3 { 1.0 } else { 0.0 })
        .collect();
    let rhs = a.apply(&x_true);
    println!(
        "{}: {} x {}, {} nonzeros",
        path.display(),
        a.rows(),
        a.cols(),
        a.nnz()
    );
    println!(
        "x_true has {} nonzeros",
        x_true.iter().filter(|v| **v != 0.0).count()
    );

    for kind in [Preset::Kaczmarz, Preset::SparseKaczmarz] {
        let cfg = SolveConfig {
            problem: ProblemSource::MatrixMarket {
                path: path.clone(),
                rhs: Some(rhs.clone()),
                rhs_path: None,
            },
            preset: kind,
            lambda: kind.needs_lambda().then_some(1.0),
            step: None,
            control: ControlSequence::Cyclic,
            max_iterations: 1_000_000,
            tolerance: 1e-6,
        };
        let report = run_solve(&cfg)?;
        let x = report.result.pair.x();
        let nonzeros = x.iter().filter(|v| v.abs() > 1e-8).count();
        println!(
            "{:<15} {:>7} steps ({:?}), {nonzeros} nonzeros, |x - x_true|_inf = {:.2e}",
            kind.name(),
            report.result.iterations,
            report.result.reason,
            dist_inf(x, &x_true)
        );
    }
    Ok(())
}
