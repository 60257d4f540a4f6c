//! Parallel-beam projection matrices by exact ray/pixel intersection.
//!
//! Pixels are unit squares. The image is centred at the origin; pixel
//! `(i, j)` (row `i` from the top) covers
//! `x ∈ [j − W/2, j + 1 − W/2]`, `y ∈ [H/2 − i − 1, H/2 − i]`.
//! A ray at angle θ with detector offset `s` is `s·n + t·d` with
//! `d = (cos θ, sin θ)` and `n = (−sin θ, cos θ)`; at 0° rays run along
//! image rows.

use super::SparseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ParallelBeamGeometry {
    pub height: usize,
    pub width: usize,
    pub angles_deg: Vec<f64>,
    pub rays_per_angle: usize,
    /// Distance between neighbouring parallel rays, in pixels.
    #[serde(default = "default_spacing")]
    pub ray_spacing: f64,
}

fn default_spacing() -> f64 {
    1.0
}

impl ParallelBeamGeometry {
    /// `angles` equispaced angles `0, 180/angles, …` with unit ray spacing.
    pub fn uniform(height: usize, width: usize, angles: usize, rays_per_angle: usize) -> Self {
        Self {
            height,
            width,
            angles_deg: (0..angles)
                .map(|a| a as f64 * 180.0 / angles as f64)
                .collect(),
            rays_per_angle,
            ray_spacing: 1.0,
        }
    }

    /// Detector offsets, centred on the origin.
    pub fn offsets(&self) -> Vec<f64> {
        let centre = (self.rays_per_angle as f64 - 1.0) / 2.0;
        (0..self.rays_per_angle)
            .map(|r| (r as f64 - centre) * self.ray_spacing)
            .collect()
    }
}

/// The projection matrix together with the angle index of each kept row.
#[derive(Debug, Clone)]
pub struct ParallelProjector {
    pub matrix: SparseMatrix,
    pub row_angle: Vec<usize>,
    pub geometry: ParallelBeamGeometry,
}

impl ParallelProjector {
    /// Sums of the measurements belonging to each angle.
    pub fn per_angle_sums(&self, data: &[f64]) -> Vec<f64> {
        let mut sums = vec![0.0; self.geometry.angles_deg.len()];
        for (&a, &v) in self.row_angle.iter().zip(data) {
            sums[a] += v;
        }
        sums
    }

    /// Estimate of `Σ u` for a nonnegative image: each angle's total
    /// measurement times the ray spacing, averaged over angles.
    pub fn mass_estimate(&self, data: &[f64]) -> f64 {
        let sums = self.per_angle_sums(data);
        self.geometry.ray_spacing * sums.iter().sum::<f64>() / sums.len() as f64
    }
}

const MIN_SEGMENT: f64 = 1e-12;

/// Pixels crossed by one ray and the length of each crossing.
pub fn ray_intersections(
    height: usize,
    width: usize,
    angle_deg: f64,
    offset: f64,
) -> Vec<(usize, f64)> {
    let theta = angle_deg.to_radians();
    let (s, c) = theta.sin_cos();
    let (dx, dy) = (snap(c), snap(s));
    let (ox, oy) = (-s * offset, c * offset);
    let (hw, hh) = (width as f64 / 2.0, height as f64 / 2.0);

    // slab clipping against the image square
    let mut t_lo = f64::NEG_INFINITY;
    let mut t_hi = f64::INFINITY;
    for (o, d, half) in [(ox, dx, hw), (oy, dy, hh)] {
        if d == 0.0 {
            if o < -half || o > half {
                return Vec::new();
            }
        } else {
            let (a, b) = ((-half - o) / d, (half - o) / d);
            t_lo = t_lo.max(a.min(b));
            t_hi = t_hi.min(a.max(b));
        }
    }
    if !(t_hi - t_lo > MIN_SEGMENT) {
        return Vec::new();
    }

    let mut ts = vec![t_lo, t_hi];
    if dx != 0.0 {
        for j in 0..=width {
            let t = (j as f64 - hw - ox) / dx;
            if t > t_lo && t < t_hi {
                ts.push(t);
            }
        }
    }
    if dy != 0.0 {
        for i in 0..=height {
            let t = (i as f64 - hh - oy) / dy;
            if t > t_lo && t < t_hi {
                ts.push(t);
            }
        }
    }
    ts.sort_by(f64::total_cmp);

    let mut out: Vec<(usize, f64)> = Vec::new();
    for w in ts.windows(2) {
        let len = w[1] - w[0];
        if len <= MIN_SEGMENT {
            continue;
        }
        let tm = 0.5 * (w[0] + w[1]);
        let (px, py) = (ox + tm * dx, oy + tm * dy);
        let j = ((px + hw).floor() as isize).clamp(0, width as isize - 1) as usize;
        let i = ((hh - py).floor() as isize).clamp(0, height as isize - 1) as usize;
        let k = i * width + j;
        match out.last_mut() {
            Some((last, l)) if *last == k => *l += len,
            _ => out.push((k, len)),
        }
    }
    out
}

// cos(90°) is 6e-17 in floating point; treat it as an exact axis direction
fn snap(v: f64) -> f64 {
    if v.abs() < 1e-14 {
        0.0
    } else {
        v
    }
}

/// One row per (angle, offset) ray with nonempty intersection; entries are
/// intersection lengths and hence nonnegative.
pub fn build_parallel_projector(geometry: &ParallelBeamGeometry) -> Result<ParallelProjector> {
    if geometry.height < 2 || geometry.width < 2 {
        return Err(Error::InvalidParameter(
            "projector needs at least a 2×2 image".into(),
        ));
    }
    if geometry.angles_deg.is_empty() {
        return Err(Error::InvalidParameter(
            "projector needs at least one angle".into(),
        ));
    }
    if !(geometry.ray_spacing > 0.0) {
        return Err(Error::InvalidParameter(
            "ray spacing must be positive".into(),
        ));
    }
    let offsets = geometry.offsets();
    let mut triplets = Vec::new();
    let mut row_angle = Vec::new();
    for (a, &angle) in geometry.angles_deg.iter().enumerate() {
        for &s in &offsets {
            let hits = ray_intersections(geometry.height, geometry.width, angle, s);
            if hits.is_empty() {
                continue;
            }
            let row = row_angle.len();
            triplets.extend(hits.into_iter().map(|(k, l)| (row, k, l)));
            row_angle.push(a);
        }
    }
    let matrix =
        SparseMatrix::from_triplets(row_angle.len(), geometry.height * geometry.width, triplets)?;
    Ok(ParallelProjector {
        matrix,
        row_angle,
        geometry: geometry.clone(),
    })
}
