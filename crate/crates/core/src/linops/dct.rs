use rand::seq::index::sample;
use rand::Rng;

use super::{DenseMatrix, LinearOperator};
use crate::error::{Error, Result};

/// Row `j` of the orthonormal DCT-II matrix of size `n`.
pub fn dct_row(n: usize, j: usize) -> Result<Vec<f64>> {
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, len: n });
    }
    let c = if j == 0 {
        (1.0 / n as f64).sqrt()
    } else {
        (2.0 / n as f64).sqrt()
    };
    let base = std::f64::consts::PI * j as f64 / (2.0 * n as f64);
    Ok((0..n)
        .map(|l| c * (base * (2 * l + 1) as f64).cos())
        .collect())
}

/// A subset of rows of the orthonormal DCT-II.
#[derive(Debug, Clone)]
pub struct PartialDct {
    selected: Vec<usize>,
    rows: DenseMatrix,
}

impl PartialDct {
    pub fn new(n: usize, selected: Vec<usize>) -> Result<Self> {
        let mut data = Vec::with_capacity(selected.len() * n);
        for &j in &selected {
            data.extend(dct_row(n, j)?);
        }
        let rows = DenseMatrix::from_row_major(selected.len(), n, data)?;
        Ok(Self { selected, rows })
    }

    /// `m` distinct rows drawn uniformly without replacement, kept in
    /// increasing order.
    pub fn random(n: usize, m: usize, rng: &mut impl Rng) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidParameter(format!(
                "cannot select {m} of {n} DCT rows"
            )));
        }
        let mut selected = sample(rng, n, m).into_vec();
        selected.sort_unstable();
        Self::new(n, selected)
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn as_dense(&self) -> &DenseMatrix {
        &self.rows
    }
}

impl LinearOperator for PartialDct {
    fn rows(&self) -> usize {
        self.rows.rows()
    }
    fn cols(&self) -> usize {
        self.rows.cols()
    }
    fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        self.rows.apply_into(x, y)
    }
    fn apply_adjoint_into(&self, y: &[f64], x: &mut [f64]) {
        self.rows.apply_adjoint_into(y, x)
    }
    fn row(&self, i: usize) -> Option<Vec<f64>> {
        self.rows.row(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::dot;

    #[test]
    fn constant_row() {
        assert_eq!(dct_row(4, 0).unwrap(), vec![0.5; 4]);
        assert!(dct_row(4, 4).is_err());
    }

    #[test]
    fn rows_are_orthonormal() {
        for n in [1, 2, 5, 9] {
            for j in 0..n.min(9) {
                for k in 0..n.min(9) {
                    let ip = dot(&dct_row(n, j).unwrap(), &dct_row(n, k).unwrap());
                    let expect = if j == k { 1.0 } else { 0.0 };
                    assert!((ip - expect).abs() < 1e-13, "n={n} j={j} k={k} ip={ip}");
                }
            }
        }
    }

    #[test]
    fn full_transform_then_adjoint_is_identity() {
        let n = 7;
        let full = PartialDct::new(n, (0..n).collect()).unwrap();
        let x: Vec<f64> = (0..n).map(|i| (i as f64 - 2.0).powi(3)).collect();
        let back = full.apply_adjoint(&full.apply(&x));
        assert!(back.iter().zip(&x).all(|(a, b)| (a - b).abs() < 1e-11));
    }
}
