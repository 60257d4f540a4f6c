use super::LinearOperator;

/// Forward-difference gradient of a row-major `height × width` image.
///
/// Output is the x-derivative block followed by the y-derivative block,
/// each of length `height·width`. Differences across the last column (x)
/// and last row (y) are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grad2D {
    height: usize,
    width: usize,
}

impl Grad2D {
    pub fn new(height: usize, width: usize) -> Self {
        Self { height, width }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pixels(&self) -> usize {
        self.height * self.width
    }
}

impl LinearOperator for Grad2D {
    fn rows(&self) -> usize {
        2 * self.pixels()
    }

    fn cols(&self) -> usize {
        self.pixels()
    }

    fn apply_into(&self, u: &[f64], p: &mut [f64]) {
        let (h, w, n) = (self.height, self.width, self.pixels());
        let (px, py) = p.split_at_mut(n);
        for i in 0..h {
            for j in 0..w {
                let k = i * w + j;
                px[k] = if j + 1 < w { u[k + 1] - u[k] } else { 0.0 };
                py[k] = if i + 1 < h { u[k + w] - u[k] } else { 0.0 };
            }
        }
    }

    /// Negative divergence.
    fn apply_adjoint_into(&self, p: &[f64], u: &mut [f64]) {
        let (h, w, n) = (self.height, self.width, self.pixels());
        let (px, py) = p.split_at(n);
        for i in 0..h {
            for j in 0..w {
                let k = i * w + j;
                let mut v = 0.0;
                if j + 1 < w {
                    v -= px[k];
                }
                if j > 0 {
                    v += px[k - 1];
                }
                if i + 1 < h {
                    v -= py[k];
                }
                if i > 0 {
                    v += py[k - w];
                }
                u[k] = v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::{adjoint_mismatch, operator_norm, to_dense};

    #[test]
    fn constant_image_has_zero_gradient() {
        let g = Grad2D::new(4, 5);
        assert!(g.apply(&[2.5; 20]).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn ramp_gradient() {
        let g = Grad2D::new(2, 3);
        let u = [0.0, 1.0, 2.0, 10.0, 11.0, 12.0];
        let p = g.apply(&u);
        assert_eq!(&p[..6], &[1.0, 1.0, 0.0, 1.0, 1.0, 0.0]);
        assert_eq!(&p[6..], &[10.0, 10.0, 10.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn adjoint_identity() {
        let g = Grad2D::new(3, 4);
        let u: Vec<f64> = (0..12).map(|i| (i as f64 * 0.7).sin()).collect();
        let p: Vec<f64> = (0..24).map(|i| (i as f64 * 1.3).cos()).collect();
        assert!(adjoint_mismatch(&g, &u, &p) < 1e-14);
    }

    #[test]
    fn norm_below_sqrt8_and_matches_dense_spectrum() {
        let n = 16;
        let g = Grad2D::new(n, n);
        let est = operator_norm(&g);
        assert!(est.value <= 8f64.sqrt() + 1e-12, "{est:?}");

        // top eigenpair of the 1-D Neumann Laplacian: 4 sin²(π(n−1)/2n),
        // eigenvector cos(π(n−1)(j+½)/n); ∇ᵀ∇ is their Kronecker sum
        let pi = std::f64::consts::PI;
        let axis = 4.0 * (pi * (n - 1) as f64 / (2 * n) as f64).sin().powi(2);
        let lambda_max = 2.0 * axis;
        let mode: Vec<f64> = (0..n)
            .map(|j| (pi * (n - 1) as f64 * (j as f64 + 0.5) / n as f64).cos())
            .collect();
        let v: Vec<f64> = (0..n * n).map(|k| mode[k / n] * mode[k % n]).collect();

        let dense = to_dense(&g);
        let dv = crate::linops::LinearOperator::apply(&dense, &v);
        let gv = crate::linops::LinearOperator::apply_adjoint(&dense, &dv);
        for (a, b) in gv.iter().zip(&v) {
            assert!((a - lambda_max * b).abs() < 1e-10);
        }
        // Gershgorin: every row of the dense Gram matrix has absolute sum ≤ 8
        let t = dense.transpose();
        for j in 0..n * n {
            let col = t.row_slice(j);
            let row_sum: f64 = (0..n * n)
                .map(|k| crate::vector::dot(col, t.row_slice(k)).abs())
                .sum();
            assert!(row_sum <= 8.0 + 1e-12);
        }
        let exact = lambda_max.sqrt();
        assert!(
            (est.value - exact).abs() < 1e-3 * exact,
            "{} vs {exact}",
            est.value
        );
    }
}
