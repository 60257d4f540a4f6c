//! Matrix-free linear operators: the system matrices, the discrete gradient
//! and the block operators used to couple auxiliary variables.

mod block;
mod dct;
mod dense;
mod grad;
mod projector;
mod sparse;

pub use block::{BlockMode, BlockRow, ScaledIdentity};
pub use dct::{dct_row, PartialDct};
pub use dense::DenseMatrix;
pub use grad::Grad2D;
pub use projector::{
    build_parallel_projector, ray_intersections, ParallelBeamGeometry, ParallelProjector,
};
pub use sparse::SparseMatrix;

use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vector::{norm2, norm2_sq};

/// A linear map `ℝⁿ → ℝᵐ` with its adjoint.
pub trait LinearOperator: Debug + Send + Sync {
    fn rows(&self) -> usize;

    fn cols(&self) -> usize;

    /// `y = A x`, with `x.len() == cols()` and `y.len() == rows()`.
    fn apply_into(&self, x: &[f64], y: &mut [f64]);

    /// `x = Aᵀ y`.
    fn apply_adjoint_into(&self, y: &[f64], x: &mut [f64]);

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols(), "operator input length");
        let mut y = vec![0.0; self.rows()];
        self.apply_into(x, &mut y);
        y
    }

    fn apply_adjoint(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows(), "adjoint input length");
        let mut x = vec![0.0; self.cols()];
        self.apply_adjoint_into(y, &mut x);
        x
    }

    /// Row `i` as a dense vector, for operators that store rows.
    fn row(&self, _i: usize) -> Option<Vec<f64>> {
        None
    }
}

/// Result of a power iteration on `AᵀA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    /// Estimate of the largest singular value.
    pub value: f64,
    pub iterations: usize,
    /// `false` when the iteration cap was hit before the relative change
    /// dropped below the tolerance; `value` is then the best estimate.
    pub converged: bool,
}

pub const NORM_TOLERANCE: f64 = 1e-6;
pub const NORM_MAX_ITERATIONS: usize = 1000;

/// Largest singular value via power iteration on `AᵀA`.
pub fn operator_norm(op: &dyn LinearOperator) -> NormEstimate {
    power_iteration(op, NORM_TOLERANCE, NORM_MAX_ITERATIONS)
}

pub fn power_iteration(
    op: &dyn LinearOperator,
    tolerance: f64,
    max_iterations: usize,
) -> NormEstimate {
    let n = op.cols();
    if n == 0 || op.rows() == 0 {
        return NormEstimate {
            value: 0.0,
            iterations: 0,
            converged: true,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let nv = norm2(&v);
    v.iter_mut().for_each(|e| *e /= nv);

    let mut av = vec![0.0; op.rows()];
    let mut estimate = 0.0;
    for it in 1..=max_iterations {
        op.apply_into(&v, &mut av);
        let sigma = norm2(&av);
        if sigma == 0.0 {
            return NormEstimate {
                value: 0.0,
                iterations: it,
                converged: true,
            };
        }
        op.apply_adjoint_into(&av, &mut v);
        let nw = norm2(&v);
        v.iter_mut().for_each(|e| *e /= nw);
        // ‖AᵀA v‖ for unit v is the sharper estimate of σ²
        let next = nw.sqrt();
        if (next - estimate).abs() <= tolerance * next {
            return NormEstimate {
                value: next,
                iterations: it,
                converged: true,
            };
        }
        estimate = next;
    }
    NormEstimate {
        value: estimate,
        iterations: max_iterations,
        converged: false,
    }
}

/// Relative error of the adjoint identity `⟨Ax, y⟩ = ⟨x, Aᵀy⟩`.
pub fn adjoint_mismatch(op: &dyn LinearOperator, x: &[f64], y: &[f64]) -> f64 {
    let ax = op.apply(x);
    let aty = op.apply_adjoint(y);
    let lhs = crate::vector::dot(&ax, y);
    let rhs = crate::vector::dot(x, &aty);
    let scale = (norm2_sq(&ax) * norm2_sq(y))
        .sqrt()
        .max((norm2_sq(x) * norm2_sq(&aty)).sqrt());
    if scale == 0.0 {
        (lhs - rhs).abs()
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Materializes any operator column by column.
pub fn to_dense(op: &dyn LinearOperator) -> DenseMatrix {
    let (m, n) = (op.rows(), op.cols());
    let mut data = vec![0.0; m * n];
    let mut e = vec![0.0; n];
    let mut col = vec![0.0; m];
    for j in 0..n {
        e[j] = 1.0;
        op.apply_into(&e, &mut col);
        for i in 0..m {
            data[i * n + j] = col[i];
        }
        e[j] = 0.0;
    }
    DenseMatrix::from_row_major(m, n, data).expect("consistent shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal_norms() {
        let id = ScaledIdentity::new(5, 1.0);
        let est = operator_norm(&id);
        assert!(est.converged);
        assert!((est.value - 1.0).abs() < 1e-12);

        let diag = DenseMatrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let est = operator_norm(&diag);
        assert!((est.value - 3.0).abs() < 1e-5, "{est:?}");
    }

    #[test]
    fn zero_operator_has_zero_norm() {
        let z = DenseMatrix::zeros(3, 4);
        assert_eq!(operator_norm(&z).value, 0.0);
    }

    #[test]
    fn cap_reports_unconverged() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.999]]).unwrap();
        let est = power_iteration(&a, 1e-15, 2);
        assert!(!est.converged);
        assert!(est.value > 0.9);
    }
}
