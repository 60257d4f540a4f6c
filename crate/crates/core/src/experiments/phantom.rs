use serde::{Deserialize, Serialize};

/// An ellipse in the `[−1, 1]²` image square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ellipse {
    pub center: (f64, f64),
    pub axes: (f64, f64),
    pub angle_deg: f64,
    /// Added to every pixel whose centre lies inside.
    pub intensity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phantom {
    pub height: usize,
    pub width: usize,
    pub ellipses: Vec<Ellipse>,
}

// modified Shepp–Logan: intensity, semi-axes, centre, rotation
const SHEPP_LOGAN: [(f64, f64, f64, f64, f64, f64); 10] = [
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
];

impl Phantom {
    pub fn shepp_logan(height: usize, width: usize) -> Self {
        let ellipses = SHEPP_LOGAN
            .iter()
            .map(|&(intensity, a, b, x, y, angle_deg)| Ellipse {
                center: (x, y),
                axes: (a, b),
                angle_deg,
                intensity,
            })
            .collect();
        Self {
            height,
            width,
            ellipses,
        }
    }

    pub fn empty(height: usize, width: usize) -> Self {
        Self {
            height,
            width,
            ellipses: Vec::new(),
        }
    }

    /// Row-major image, row 0 at the top, clipped to `≥ 0`.
    pub fn render(&self) -> Vec<f64> {
        let (h, w) = (self.height, self.width);
        let mut out = vec![0.0; h * w];
        for i in 0..h {
            let y = 1.0 - (2 * i + 1) as f64 / h as f64;
            for j in 0..w {
                let x = (2 * j + 1) as f64 / w as f64 - 1.0;
                let mut v = 0.0;
                for e in &self.ellipses {
                    let (s, c) = e.angle_deg.to_radians().sin_cos();
                    let (dx, dy) = (x - e.center.0, y - e.center.1);
                    let u = (dx * c + dy * s) / e.axes.0;
                    let t = (-dx * s + dy * c) / e.axes.1;
                    if u * u + t * t <= 1.0 {
                        v += e.intensity;
                    }
                }
                out[i * w + j] = v.max(0.0);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shepp_logan_ranges() {
        let img = Phantom::shepp_logan(64, 64).render();
        assert!(img.iter().all(|&v| v >= 0.0));
        let max = img.iter().copied().fold(0.0, f64::max);
        assert!((max - 1.0).abs() < 1e-12);
        // corners are background
        assert_eq!(img[0], 0.0);
        assert_eq!(img[64 * 64 - 1], 0.0);
        // centre lies in the brain region (1 − 0.8)
        assert!((img[32 * 64 + 32] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn empty_renders_zero() {
        assert!(Phantom::empty(4, 5).render().iter().all(|&v| v == 0.0));
    }
}
