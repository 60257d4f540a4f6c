//! Strongly convex objectives `f` together with their conjugates `f*` and
//! the gradient map `∇f*`, which is how every iterate moves from the dual
//! variable `x*` back to the primal variable `x`.
//!
//! All shipped objectives have the form `λ·h(x) + ½‖x‖²` for a norm-like
//! `h` (or `h = 0`). For such functions `∇f* = prox_{λh}` and, because `h`
//! is positively homogeneous, `f*(x*) = ½‖∇f*(x*)‖²`.

use std::fmt::Debug;
use std::ops::Range;

use crate::error::{check_dim, Error, Result};
use crate::projections::project_l1_ball;
use crate::vector::{dot, norm2_sq};

/// A strongly convex function with modulus `alpha`.
pub trait Objective: Debug + Send + Sync {
    fn dim(&self) -> usize;

    /// Strong convexity modulus.
    fn alpha(&self) -> f64;

    fn value(&self, x: &[f64]) -> f64;

    fn conjugate(&self, x_star: &[f64]) -> f64;

    /// Writes `∇f*(x_star)` into `out`. Both slices have length `dim()`.
    fn grad_conjugate_into(&self, x_star: &[f64], out: &mut [f64]);

    fn grad_conjugate(&self, x_star: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x_star.len()];
        self.grad_conjugate_into(x_star, &mut out);
        out
    }

    /// `Some(λ)` when `f(x) = λ‖x‖₁ + ½‖x‖²` coordinatewise (λ = 0 for the
    /// squared norm). Enables closed-form projections and the exact
    /// kink-walking line search.
    fn l1_weight(&self) -> Option<f64> {
        None
    }

    /// The restriction of `f` to a coordinate block, when `f` separates
    /// along that block.
    fn block(&self, range: Range<usize>) -> Option<&dyn Objective>;
}

macro_rules! whole_block {
    () => {
        fn block(&self, range: Range<usize>) -> Option<&dyn Objective> {
            (range.start == 0 && range.end == self.dim()).then_some(self as &dyn Objective)
        }
    };
}

/// Componentwise soft shrinkage `sign(x)·max(|x| − λ, 0)`.
pub fn soft_shrink(x: &[f64], lambda: f64) -> Vec<f64> {
    x.iter().map(|&v| shrink(v, lambda)).collect()
}

#[inline]
pub fn shrink(v: f64, lambda: f64) -> f64 {
    if v > lambda {
        v - lambda
    } else if v < -lambda {
        v + lambda
    } else {
        0.0
    }
}

/// `f*(x*) = ½‖S_λ(x*)‖²` for the elastic net.
pub fn eval_conjugate_elasticnet(x_star: &[f64], lambda: f64) -> f64 {
    0.5 * x_star
        .iter()
        .map(|&v| shrink(v, lambda).powi(2))
        .sum::<f64>()
}

/// `f(x) = ½‖x‖²`.
#[derive(Debug, Clone)]
pub struct SquaredNorm {
    dim: usize,
}

impl SquaredNorm {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

impl Objective for SquaredNorm {
    fn dim(&self) -> usize {
        self.dim
    }
    fn alpha(&self) -> f64 {
        1.0
    }
    fn value(&self, x: &[f64]) -> f64 {
        0.5 * norm2_sq(x)
    }
    fn conjugate(&self, x_star: &[f64]) -> f64 {
        0.5 * norm2_sq(x_star)
    }
    fn grad_conjugate_into(&self, x_star: &[f64], out: &mut [f64]) {
        out.copy_from_slice(x_star);
    }
    fn l1_weight(&self) -> Option<f64> {
        Some(0.0)
    }
    whole_block!();
}

/// `f(x) = λ‖x‖₁ + ½‖x‖²`, the regularized basis pursuit objective.
#[derive(Debug, Clone)]
pub struct ElasticNet {
    dim: usize,
    lambda: f64,
}

impl ElasticNet {
    pub fn new(dim: usize, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and nonnegative, got {lambda}"
            )));
        }
        Ok(Self { dim, lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl Objective for ElasticNet {
    fn dim(&self) -> usize {
        self.dim
    }
    fn alpha(&self) -> f64 {
        1.0
    }
    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|&v| self.lambda * v.abs() + 0.5 * v * v).sum()
    }
    fn conjugate(&self, x_star: &[f64]) -> f64 {
        eval_conjugate_elasticnet(x_star, self.lambda)
    }
    fn grad_conjugate_into(&self, x_star: &[f64], out: &mut [f64]) {
        for (o, &v) in out.iter_mut().zip(x_star) {
            *o = shrink(v, self.lambda);
        }
    }
    fn l1_weight(&self) -> Option<f64> {
        Some(self.lambda)
    }
    whole_block!();
}

/// A partition of `0..dim` into index groups.
#[derive(Debug, Clone, PartialEq)]
pub struct Groups {
    dim: usize,
    groups: Vec<Vec<usize>>,
}

impl Groups {
    pub fn new(dim: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; dim];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvalidGroups {
                    dim,
                    reason: "empty group".into(),
                });
            }
            for &i in g {
                if i >= dim {
                    return Err(Error::InvalidGroups {
                        dim,
                        reason: format!("index {i} out of range"),
                    });
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidGroups {
                        dim,
                        reason: format!("index {i} appears in more than one group"),
                    });
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidGroups {
                dim,
                reason: format!("index {i} is not covered"),
            });
        }
        Ok(Self { dim, groups })
    }

    /// Groups `{i, n + i}` for `i < n` over a vector of length `2n`, the
    /// pairing of x- and y-derivatives produced by [`crate::linops::Grad2D`].
    pub fn pairs(n: usize) -> Self {
        Self {
            dim: 2 * n,
            groups: (0..n).map(|i| vec![i, n + i]).collect(),
        }
    }

    /// Consecutive groups of the given sizes.
    pub fn contiguous(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let mut groups = Vec::with_capacity(sizes.len());
        for &s in sizes {
            groups.push((start..start + s).collect());
            start += s;
        }
        Self::new(start, groups)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.groups.iter().map(Vec::as_slice)
    }
}

fn gather(v: &[f64], idx: &[usize]) -> Vec<f64> {
    idx.iter().map(|&i| v[i]).collect()
}

/// `f(p) = λ Σ_g ‖p_g‖₂ + ½‖p‖²`: isotropic total variation when the groups
/// are gradient pairs.
#[derive(Debug, Clone)]
pub struct GroupElasticNet {
    lambda: f64,
    groups: Groups,
}

impl GroupElasticNet {
    pub fn new(lambda: f64, groups: Groups) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and nonnegative, got {lambda}"
            )));
        }
        Ok(Self { lambda, groups })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn groups(&self) -> &Groups {
        &self.groups
    }
}

impl Objective for GroupElasticNet {
    fn dim(&self) -> usize {
        self.groups.dim()
    }
    fn alpha(&self) -> f64 {
        1.0
    }
    fn value(&self, x: &[f64]) -> f64 {
        let tv: f64 = self
            .groups
            .iter()
            .map(|g| g.iter().map(|&i| x[i] * x[i]).sum::<f64>().sqrt())
            .sum();
        self.lambda * tv + 0.5 * norm2_sq(x)
    }
    fn conjugate(&self, x_star: &[f64]) -> f64 {
        0.5 * norm2_sq(&self.grad_conjugate(x_star))
    }
    fn grad_conjugate_into(&self, x_star: &[f64], out: &mut [f64]) {
        for g in self.groups.iter() {
            let n = g.iter().map(|&i| x_star[i] * x_star[i]).sum::<f64>().sqrt();
            let factor = if n > self.lambda {
                1.0 - self.lambda / n
            } else {
                0.0
            };
            for &i in g {
                out[i] = factor * x_star[i];
            }
        }
    }
    whole_block!();
}

/// `f(ρ) = λ Σ_l |G_l|·max_{j∈G_l} |ρ_j| + ½‖ρ‖²`, a group-sparsity prior
/// that favours constant magnitude within each group.
#[derive(Debug, Clone)]
pub struct GroupedMax {
    lambda: f64,
    groups: Groups,
}

impl GroupedMax {
    pub fn new(lambda: f64, groups: Groups) -> Result<Self> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and nonnegative, got {lambda}"
            )));
        }
        Ok(Self { lambda, groups })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn groups(&self) -> &Groups {
        &self.groups
    }
}

impl Objective for GroupedMax {
    fn dim(&self) -> usize {
        self.groups.dim()
    }
    fn alpha(&self) -> f64 {
        1.0
    }
    fn value(&self, x: &[f64]) -> f64 {
        let mix: f64 = self
            .groups
            .iter()
            .map(|g| g.len() as f64 * g.iter().fold(0.0_f64, |m, &i| m.max(x[i].abs())))
            .sum();
        self.lambda * mix + 0.5 * norm2_sq(x)
    }
    fn conjugate(&self, x_star: &[f64]) -> f64 {
        0.5 * norm2_sq(&self.grad_conjugate(x_star))
    }
    fn grad_conjugate_into(&self, x_star: &[f64], out: &mut [f64]) {
        // prox of r‖·‖∞ is the residual of the projection onto the l1 ball of radius r
        for g in self.groups.iter() {
            let z = gather(x_star, g);
            let radius = self.lambda * g.len() as f64;
            let p = project_l1_ball(&z, radius);
            for (k, &i) in g.iter().enumerate() {
                out[i] = z[k] - p[k];
            }
        }
    }
    whole_block!();
}

/// Block-separable sum `f(x) = Σ_b f_b(x_b)` over consecutive coordinate
/// blocks.
#[derive(Debug)]
pub struct ProductObjective {
    blocks: Vec<(Box<dyn Objective>, Range<usize>)>,
    dim: usize,
    alpha: f64,
}

impl ProductObjective {
    pub fn new(parts: Vec<Box<dyn Objective>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter(
                "product objective needs a block".into(),
            ));
        }
        let mut start = 0;
        let mut blocks = Vec::with_capacity(parts.len());
        let mut alpha = f64::INFINITY;
        for obj in parts {
            let end = start + obj.dim();
            alpha = alpha.min(obj.alpha());
            blocks.push((obj, start..end));
            start = end;
        }
        Ok(Self {
            blocks,
            dim: start,
            alpha,
        })
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&dyn Objective, Range<usize>)> {
        self.blocks.iter().map(|(o, r)| (o.as_ref(), r.clone()))
    }
}

impl Objective for ProductObjective {
    fn dim(&self) -> usize {
        self.dim
    }
    fn alpha(&self) -> f64 {
        self.alpha
    }
    fn value(&self, x: &[f64]) -> f64 {
        self.blocks
            .iter()
            .map(|(o, r)| o.value(&x[r.clone()]))
            .sum()
    }
    fn conjugate(&self, x_star: &[f64]) -> f64 {
        self.blocks
            .iter()
            .map(|(o, r)| o.conjugate(&x_star[r.clone()]))
            .sum()
    }
    fn grad_conjugate_into(&self, x_star: &[f64], out: &mut [f64]) {
        for (o, r) in &self.blocks {
            o.grad_conjugate_into(&x_star[r.clone()], &mut out[r.clone()]);
        }
    }
    fn l1_weight(&self) -> Option<f64> {
        let first = self.blocks[0].0.l1_weight()?;
        self.blocks
            .iter()
            .all(|(o, _)| o.l1_weight() == Some(first))
            .then_some(first)
    }
    fn block(&self, range: Range<usize>) -> Option<&dyn Objective> {
        if range.start == 0 && range.end == self.dim {
            return Some(self);
        }
        self.blocks
            .iter()
            .find(|(_, r)| r.start <= range.start && range.end <= r.end)
            .and_then(|(o, r)| o.block(range.start - r.start..range.end - r.start))
    }
}

/// Checked `∇f*(x*)`.
pub fn grad_conjugate(obj: &dyn Objective, x_star: &[f64]) -> Result<Vec<f64>> {
    check_dim(obj.dim(), x_star.len())?;
    Ok(obj.grad_conjugate(x_star))
}

/// `Δ(x*, x) = f*(x*) − ⟨x*, x⟩ + f(x)`; zero exactly when `x = ∇f*(x*)`.
pub fn delta(obj: &dyn Objective, x_star: &[f64], x: &[f64]) -> Result<f64> {
    check_dim(obj.dim(), x_star.len())?;
    check_dim(obj.dim(), x.len())?;
    Ok(raw_delta(obj, x_star, x))
}

pub(crate) fn raw_delta(obj: &dyn Objective, x_star: &[f64], x: &[f64]) -> f64 {
    (obj.conjugate(x_star) - dot(x_star, x) + obj.value(x)).max(0.0)
}

/// Tolerance under which `Δ(x*, x)` certifies `x* ∈ ∂f(x)`.
pub fn subgradient_tolerance(obj: &dyn Objective, x: &[f64]) -> f64 {
    1e-8 * (1.0 + obj.value(x).abs())
}

/// `D^{x*}(x, y) = f(y) − f(x) − ⟨x*, y − x⟩`.
pub fn bregman_distance(obj: &dyn Objective, x: &[f64], x_star: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(obj.dim(), y.len())?;
    let d = delta(obj, x_star, x)?;
    let tolerance = subgradient_tolerance(obj, x);
    if d > tolerance {
        return Err(Error::InvalidSubgradient {
            delta: d,
            tolerance,
        });
    }
    let inner: f64 = x_star
        .iter()
        .zip(y.iter().zip(x))
        .map(|(s, (yi, xi))| s * (yi - xi))
        .sum();
    Ok((obj.value(y) - obj.value(x) - inner).max(0.0))
}

/// A primal iterate paired with a dual iterate that is a subgradient of `f`
/// at it.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalDualPair {
    x: Vec<f64>,
    x_star: Vec<f64>,
}

impl PrimalDualPair {
    /// Builds the pair `(∇f*(x*), x*)`.
    pub fn from_dual(obj: &dyn Objective, x_star: Vec<f64>) -> Result<Self> {
        let x = grad_conjugate(obj, &x_star)?;
        Ok(Self { x, x_star })
    }

    /// Accepts an explicit pair after checking `Δ(x*, x)` against the
    /// subgradient tolerance.
    pub fn new(obj: &dyn Objective, x: Vec<f64>, x_star: Vec<f64>) -> Result<Self> {
        let d = delta(obj, &x_star, &x)?;
        let tolerance = subgradient_tolerance(obj, &x);
        if d > tolerance {
            return Err(Error::InvalidSubgradient {
                delta: d,
                tolerance,
            });
        }
        Ok(Self { x, x_star })
    }

    pub fn zero(obj: &dyn Objective) -> Self {
        let x_star = vec![0.0; obj.dim()];
        Self {
            x: obj.grad_conjugate(&x_star),
            x_star,
        }
    }

    pub(crate) fn from_parts_unchecked(x: Vec<f64>, x_star: Vec<f64>) -> Self {
        Self { x, x_star }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn x_star(&self) -> &[f64] {
        &self.x_star
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.x, self.x_star)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `Δ(x*, x)`.
    pub fn gap(&self, obj: &dyn Objective) -> f64 {
        raw_delta(obj, &self.x_star, &self.x)
    }

    pub fn is_consistent(&self, obj: &dyn Objective) -> bool {
        self.gap(obj) <= subgradient_tolerance(obj, &self.x)
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut [f64], &mut [f64]) {
        (&mut self.x, &mut self.x_star)
    }

    /// Moves the dual variable by `-t·d` and refreshes the primal one.
    pub(crate) fn dual_step(&mut self, obj: &dyn Objective, t: f64, d: &[f64]) {
        crate::vector::axpy(-t, d, &mut self.x_star);
        obj.grad_conjugate_into(&self.x_star, &mut self.x);
    }
}

/// Lipschitz constant of `∇f*` implied by strong convexity.
pub fn conjugate_lipschitz(obj: &dyn Objective) -> f64 {
    1.0 / obj.alpha()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::norm2;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn soft_shrink_examples() {
        assert_eq!(soft_shrink(&[2.0, -0.5, -3.0], 1.0), vec![1.0, 0.0, -2.0]);
        assert_eq!(soft_shrink(&[2.0, -0.5, -3.0], 0.0), vec![2.0, -0.5, -3.0]);
        assert_eq!(soft_shrink(&[0.5], 1.0), vec![0.0]);
    }

    #[test]
    fn elasticnet_conjugate_examples() {
        assert_eq!(eval_conjugate_elasticnet(&[2.0, 0.0], 1.0), 0.5);
        assert_eq!(eval_conjugate_elasticnet(&[0.0; 4], 3.0), 0.0);
        assert_eq!(eval_conjugate_elasticnet(&[3.0, -3.0], 1.0), 4.0);
    }

    #[test]
    fn grad_conjugate_examples() {
        let en = ElasticNet::new(2, 1.0).unwrap();
        assert_eq!(grad_conjugate(&en, &[2.0, -0.5]).unwrap(), vec![1.0, 0.0]);

        let gen = GroupElasticNet::new(1.0, Groups::new(2, vec![vec![0, 1]]).unwrap()).unwrap();
        assert!(close(&gen.grad_conjugate(&[3.0, 4.0]), &[2.4, 3.2], 1e-12));

        let gm = GroupedMax::new(1.0, Groups::new(1, vec![vec![0]]).unwrap()).unwrap();
        assert!(close(&gm.grad_conjugate(&[3.0]), &[2.0], 1e-12));

        assert!(matches!(
            grad_conjugate(&en, &[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn group_prox_matches_grid_minimization() {
        // prox of ‖·‖₂ at z = (3, 4): minimize ‖p‖ + ½‖p − z‖² over a fine grid
        let z = [3.0, 4.0];
        let mut best = (f64::INFINITY, [0.0, 0.0]);
        let steps = 800;
        for i in 0..=steps {
            for j in 0..=steps {
                let p = [
                    1.0 + 2.0 * i as f64 / steps as f64,
                    2.0 + 2.0 * j as f64 / steps as f64,
                ];
                let v = norm2(&p) + 0.5 * ((p[0] - z[0]).powi(2) + (p[1] - z[1]).powi(2));
                if v < best.0 {
                    best = (v, p);
                }
            }
        }
        let gen = GroupElasticNet::new(1.0, Groups::new(2, vec![vec![0, 1]]).unwrap()).unwrap();
        let p = gen.grad_conjugate(&z);
        assert!(close(&p, &best.1, 2.5e-3), "{p:?} vs {:?}", best.1);
    }

    #[test]
    fn bregman_distance_examples() {
        let sq = SquaredNorm::new(2);
        let d = bregman_distance(&sq, &[1.0, 0.0], &[1.0, 0.0], &[0.0, 0.0]).unwrap();
        assert!((d - 0.5).abs() < 1e-15);

        let en = ElasticNet::new(1, 1.0).unwrap();
        let d = bregman_distance(&en, &[0.0], &[0.0], &[1.0]).unwrap();
        assert!((d - 1.5).abs() < 1e-15);

        let x_star = [0.3, -2.0];
        let en2 = ElasticNet::new(2, 1.0).unwrap();
        let x = en2.grad_conjugate(&x_star);
        assert_eq!(bregman_distance(&en2, &x, &x_star, &x).unwrap(), 0.0);
    }

    #[test]
    fn bregman_distance_rejects_invalid_subgradient() {
        let en = ElasticNet::new(1, 1.0).unwrap();
        // x* = 3 is not in ∂f(0) = [-1, 1]
        let err = bregman_distance(&en, &[0.0], &[3.0], &[1.0]).unwrap_err();
        assert!(matches!(err, Error::InvalidSubgradient { .. }));
    }

    #[test]
    fn delta_examples() {
        let sq = SquaredNorm::new(1);
        assert!((delta(&sq, &[1.0], &[0.0]).unwrap() - 0.5).abs() < 1e-15);
        let en = ElasticNet::new(1, 1.0).unwrap();
        assert!((delta(&en, &[2.0], &[0.0]).unwrap() - 0.5).abs() < 1e-15);
        let x_star = [1.7, -0.2, -4.0];
        let en3 = ElasticNet::new(3, 0.5).unwrap();
        let x = en3.grad_conjugate(&x_star);
        assert!(delta(&en3, &x_star, &x).unwrap() < 1e-12);
    }

    #[test]
    fn lambda_zero_elasticnet_is_squared_norm() {
        let en = ElasticNet::new(3, 0.0).unwrap();
        let sq = SquaredNorm::new(3);
        let v = [0.4, -1.2, 3.0];
        assert_eq!(en.value(&v), sq.value(&v));
        assert_eq!(en.conjugate(&v), sq.conjugate(&v));
        assert_eq!(en.grad_conjugate(&v), sq.grad_conjugate(&v));
    }

    #[test]
    fn groups_must_partition() {
        assert!(Groups::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Groups::new(3, vec![vec![0, 1]]).is_err());
        assert!(Groups::new(3, vec![vec![0, 3], vec![1, 2]]).is_err());
        assert!(Groups::new(3, vec![vec![2, 0], vec![1]]).is_ok());
        assert_eq!(
            Groups::pairs(2).iter().collect::<Vec<_>>(),
            vec![&[0, 2][..], &[1, 3][..]]
        );
    }

    #[test]
    fn negative_lambda_rejected() {
        assert!(ElasticNet::new(2, -1.0).is_err());
        assert!(GroupElasticNet::new(-0.1, Groups::pairs(1)).is_err());
        assert!(GroupedMax::new(f64::NAN, Groups::pairs(1)).is_err());
    }

    #[test]
    fn product_is_blockwise() {
        let prod = ProductObjective::new(vec![
            Box::new(SquaredNorm::new(2)),
            Box::new(ElasticNet::new(3, 0.7).unwrap()),
        ])
        .unwrap();
        assert_eq!(prod.dim(), 5);
        assert_eq!(prod.alpha(), 1.0);
        assert_eq!(prod.l1_weight(), None);
        let v = [1.0, -2.0, 0.3, -1.5, 2.0];
        let en = ElasticNet::new(3, 0.7).unwrap();
        let sq = SquaredNorm::new(2);
        assert!((prod.value(&v) - sq.value(&v[..2]) - en.value(&v[2..])).abs() < 1e-14);
        let b = prod.block(2..5).unwrap();
        assert_eq!(b.l1_weight(), Some(0.7));
        assert_eq!(prod.block(0..2).unwrap().l1_weight(), Some(0.0));
        assert!(prod.block(1..3).is_none());
    }

    #[test]
    fn primal_dual_pair_checks_consistency() {
        let en = ElasticNet::new(2, 1.0).unwrap();
        assert!(PrimalDualPair::new(&en, vec![1.0, 0.0], vec![2.0, 0.5]).is_ok());
        assert!(PrimalDualPair::new(&en, vec![1.0, 0.0], vec![2.5, 0.5]).is_err());
        let p = PrimalDualPair::from_dual(&en, vec![-3.0, 0.2]).unwrap();
        assert_eq!(p.x(), &[-2.0, 0.0]);
        assert!(p.is_consistent(&en));
    }
}
