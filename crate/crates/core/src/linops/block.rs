use std::sync::Arc;

use super::LinearOperator;
use crate::error::{Error, Result};

/// `x ↦ scale·x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledIdentity {
    n: usize,
    scale: f64,
}

impl ScaledIdentity {
    pub fn new(n: usize, scale: f64) -> Self {
        Self { n, scale }
    }
}

impl LinearOperator for ScaledIdentity {
    fn rows(&self) -> usize {
        self.n
    }
    fn cols(&self) -> usize {
        self.n
    }
    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = self.scale * xi;
        }
    }
    fn apply_adjoint_into(&self, y: &[f64], x: &mut [f64]) {
        self.apply_into(y, x);
    }
    fn row(&self, i: usize) -> Option<Vec<f64>> {
        (i < self.n).then(|| {
            let mut r = vec![0.0; self.n];
            r[i] = self.scale;
            r
        })
    }
}

/// How the outputs of the blocks of a [`BlockRow`] are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMode {
    /// `y = Σ_b A_b x_b`; all blocks share the output dimension.
    Sum,
    /// `y = (A_1 x_1, A_2 x_2, …)`.
    Stack,
}

/// Operators acting on disjoint column blocks of one input vector.
///
/// `[∇, −I]` acting on `(u, p)` is a `Sum` block row; `[A, 0]` is a
/// single-block `Sum` whose input is wider than `A`.
#[derive(Debug, Clone)]
pub struct BlockRow {
    cols: usize,
    rows: usize,
    mode: BlockMode,
    blocks: Vec<(Arc<dyn LinearOperator>, usize)>,
}

impl BlockRow {
    /// `blocks` holds each operator with the first input column it reads.
    pub fn new(
        cols: usize,
        mode: BlockMode,
        blocks: Vec<(Arc<dyn LinearOperator>, usize)>,
    ) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameter(
                "block row needs at least one block".into(),
            ));
        }
        let mut spans: Vec<(usize, usize)> = blocks
            .iter()
            .map(|(op, off)| (*off, off + op.cols()))
            .collect();
        spans.sort_unstable();
        for w in spans.windows(2) {
            if w[1].0 < w[0].1 {
                return Err(Error::InvalidParameter(format!(
                    "column blocks {:?} and {:?} overlap",
                    w[0], w[1]
                )));
            }
        }
        if let Some(&(_, end)) = spans.last() {
            if end > cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: end,
                });
            }
        }
        let rows = match mode {
            BlockMode::Sum => {
                let r = blocks[0].0.rows();
                if let Some((op, _)) = blocks.iter().find(|(op, _)| op.rows() != r) {
                    return Err(Error::DimensionMismatch {
                        expected: r,
                        found: op.rows(),
                    });
                }
                r
            }
            BlockMode::Stack => blocks.iter().map(|(op, _)| op.rows()).sum(),
        };
        Ok(Self {
            cols,
            rows,
            mode,
            blocks,
        })
    }
}

impl LinearOperator for BlockRow {
    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        match self.mode {
            BlockMode::Sum => {
                y.iter_mut().for_each(|v| *v = 0.0);
                let mut tmp = vec![0.0; self.rows];
                for (op, off) in &self.blocks {
                    op.apply_into(&x[*off..off + op.cols()], &mut tmp);
                    for (yi, ti) in y.iter_mut().zip(&tmp) {
                        *yi += ti;
                    }
                }
            }
            BlockMode::Stack => {
                let mut start = 0;
                for (op, off) in &self.blocks {
                    let r = op.rows();
                    op.apply_into(&x[*off..off + op.cols()], &mut y[start..start + r]);
                    start += r;
                }
            }
        }
    }

    fn apply_adjoint_into(&self, y: &[f64], x: &mut [f64]) {
        x.iter_mut().for_each(|v| *v = 0.0);
        let mut start = 0;
        for (op, off) in &self.blocks {
            let part = match self.mode {
                BlockMode::Sum => y,
                BlockMode::Stack => {
                    let r = op.rows();
                    start += r;
                    &y[start - r..start]
                }
            };
            op.apply_adjoint_into(part, &mut x[*off..off + op.cols()]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::{adjoint_mismatch, DenseMatrix, Grad2D};

    #[test]
    fn gradient_minus_identity() {
        let g = Grad2D::new(2, 2);
        let op = BlockRow::new(
            12,
            BlockMode::Sum,
            vec![
                (Arc::new(g), 0),
                (Arc::new(ScaledIdentity::new(8, -1.0)), 4),
            ],
        )
        .unwrap();
        let u = [0.0, 1.0, 2.0, 3.0];
        let mut x = u.to_vec();
        x.extend(g.apply(&u));
        assert!(op.apply(&x).iter().all(|v| v.abs() < 1e-15));
        let x2: Vec<f64> = (0..12).map(|i| i as f64 - 3.5).collect();
        let y: Vec<f64> = (0..8).map(|i| (i as f64).sqrt()).collect();
        assert!(adjoint_mismatch(&op, &x2, &y) < 1e-14);
    }

    #[test]
    fn stack_and_padding() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let op = BlockRow::new(
            5,
            BlockMode::Stack,
            vec![(Arc::new(a.clone()), 0), (Arc::new(a), 3)],
        )
        .unwrap();
        assert_eq!(op.rows(), 2);
        assert_eq!(op.apply(&[1.0, 1.0, 100.0, 2.0, 0.0]), vec![3.0, 2.0]);
        assert_eq!(
            op.apply_adjoint(&[1.0, -1.0]),
            vec![1.0, 2.0, 0.0, -1.0, -2.0]
        );
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let err = BlockRow::new(
            3,
            BlockMode::Sum,
            vec![(Arc::new(a.clone()), 0), (Arc::new(a), 1)],
        );
        assert!(err.is_err());
    }
}
