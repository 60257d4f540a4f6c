//! Orthogonal projections onto range sets and Bregman projections onto
//! simple sets, plus the separating halfspace used for difficult
//! constraints `A x ∈ Q`.

use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::linesearch::{exact_linesearch, Domain};
use crate::linops::LinearOperator;
use crate::objectives::{shrink, Objective, PrimalDualPair};
use crate::vector::{axpy, dot, norm1, norm2, norm2_sq, norm_inf, sub, Norm};

/// Closed convex sets with a cheap Euclidean projection.
#[derive(Debug, Clone)]
pub enum RangeSet {
    Point(Vec<f64>),
    NormBall {
        norm: Norm,
        center: Vec<f64>,
        radius: f64,
    },
    Box {
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    NonnegCone,
    Hyperplane {
        normal: Vec<f64>,
        offset: f64,
    },
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
    },
    /// `{x : A x = b}` with `A` of full row rank.
    AffineSubspace {
        op: Arc<dyn LinearOperator>,
        rhs: Vec<f64>,
    },
}

impl RangeSet {
    pub fn norm_ball(norm: Norm, center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be nonnegative, got {radius}"
            )));
        }
        Ok(RangeSet::NormBall {
            norm,
            center,
            radius,
        })
    }

    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_dim(lower.len(), upper.len())?;
        if let Some(i) = lower.iter().zip(&upper).position(|(l, u)| !(l <= u)) {
            return Err(Error::InvalidParameter(format!(
                "empty box in coordinate {i}"
            )));
        }
        Ok(RangeSet::Box { lower, upper })
    }

    pub fn hyperplane(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if normal.iter().all(|&v| v == 0.0) {
            return Err(Error::ZeroNormal);
        }
        Ok(RangeSet::Hyperplane { normal, offset })
    }

    pub fn halfspace(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if normal.iter().all(|&v| v == 0.0) {
            return Err(Error::ZeroNormal);
        }
        Ok(RangeSet::Halfspace { normal, offset })
    }

    pub fn affine(op: Arc<dyn LinearOperator>, rhs: Vec<f64>) -> Result<Self> {
        check_dim(op.rows(), rhs.len())?;
        Ok(RangeSet::AffineSubspace { op, rhs })
    }

    /// Dimension of the ambient space, when the set fixes it.
    pub fn dim(&self) -> Option<usize> {
        match self {
            RangeSet::Point(b) => Some(b.len()),
            RangeSet::NormBall { center, .. } => Some(center.len()),
            RangeSet::Box { lower, .. } => Some(lower.len()),
            RangeSet::NonnegCone => None,
            RangeSet::Hyperplane { normal, .. } | RangeSet::Halfspace { normal, .. } => {
                Some(normal.len())
            }
            RangeSet::AffineSubspace { op, .. } => Some(op.cols()),
        }
    }

    fn check(&self, y: &[f64]) -> Result<()> {
        match self.dim() {
            Some(d) => check_dim(d, y.len()),
            None => Ok(()),
        }
    }

    /// Euclidean distance from `y` to the set.
    pub fn distance(&self, y: &[f64]) -> Result<f64> {
        match self {
            RangeSet::NonnegCone => Ok(y.iter().map(|v| v.min(0.0).powi(2)).sum::<f64>().sqrt()),
            RangeSet::Hyperplane { normal, offset } => {
                check_dim(normal.len(), y.len())?;
                Ok((dot(normal, y) - offset).abs() / norm2(normal))
            }
            RangeSet::Halfspace { normal, offset } => {
                check_dim(normal.len(), y.len())?;
                Ok((dot(normal, y) - offset).max(0.0) / norm2(normal))
            }
            _ => Ok(norm2(&sub(y, &project_orthogonal(self, y)?))),
        }
    }
}

/// Euclidean projection of `y` onto `q`.
pub fn project_orthogonal(q: &RangeSet, y: &[f64]) -> Result<Vec<f64>> {
    q.check(y)?;
    Ok(match q {
        RangeSet::Point(b) => b.clone(),
        RangeSet::NormBall {
            norm,
            center,
            radius,
        } => {
            let r = sub(y, center);
            let mut p = project_ball_centered(*norm, &r, *radius);
            axpy(1.0, center, &mut p);
            p
        }
        RangeSet::Box { lower, upper } => y
            .iter()
            .zip(lower.iter().zip(upper))
            .map(|(v, (l, u))| v.clamp(*l, *u))
            .collect(),
        RangeSet::NonnegCone => y.iter().map(|v| v.max(0.0)).collect(),
        RangeSet::Hyperplane { normal, offset } => {
            let mut p = y.to_vec();
            axpy(
                -(dot(normal, y) - offset) / norm2_sq(normal),
                normal,
                &mut p,
            );
            p
        }
        RangeSet::Halfspace { normal, offset } => {
            let excess = dot(normal, y) - offset;
            let mut p = y.to_vec();
            if excess > 0.0 {
                axpy(-excess / norm2_sq(normal), normal, &mut p);
            }
            p
        }
        RangeSet::AffineSubspace { op, rhs } => {
            // y − Aᵀ(AAᵀ)⁻¹(Ay − b)
            let r = sub(&op.apply(y), rhs);
            let w = solve_gram(op.as_ref(), &r, 1e-13, 10 * op.rows() + 100)?;
            let mut p = y.to_vec();
            axpy(-1.0, &op.apply_adjoint(&w), &mut p);
            p
        }
    })
}

/// Projection of `r` onto the `norm`-ball of radius `radius` about 0.
fn project_ball_centered(norm: Norm, r: &[f64], radius: f64) -> Vec<f64> {
    match norm {
        Norm::L2 => {
            let n = norm2(r);
            if n <= radius {
                r.to_vec()
            } else {
                r.iter().map(|v| v * radius / n).collect()
            }
        }
        Norm::Linf => r.iter().map(|v| v.clamp(-radius, radius)).collect(),
        Norm::L1 => project_l1_ball(r, radius),
    }
}

/// Conjugate gradients on `AAᵀ w = r`.
fn solve_gram(op: &dyn LinearOperator, r: &[f64], tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let m = r.len();
    let mut w = vec![0.0; m];
    let mut res = r.to_vec();
    let mut dir = res.clone();
    let mut rr = norm2_sq(&res);
    let target = tol * tol * rr.max(f64::MIN_POSITIVE);
    for _ in 0..max_iter {
        if rr <= target {
            return Ok(w);
        }
        let gd = op.apply(&op.apply_adjoint(&dir));
        let step = rr / dot(&dir, &gd);
        axpy(step, &dir, &mut w);
        axpy(-step, &gd, &mut res);
        let rr_next = norm2_sq(&res);
        let beta = rr_next / rr;
        for (d, v) in dir.iter_mut().zip(&res) {
            *d = v + beta * *d;
        }
        rr = rr_next;
    }
    if rr <= target * 1e6 {
        Ok(w)
    } else {
        Err(Error::NoConvergence {
            iterations: max_iter,
            residual: rr.sqrt(),
        })
    }
}

/// Nearest point of `{z ≥ 0, Σ z = s}` by sorting and thresholding.
///
/// `s = 0` yields the zero vector; negative `s` panics.
pub fn project_simplex(y: &[f64], s: f64) -> Vec<f64> {
    assert!(s >= 0.0, "simplex mass must be nonnegative");
    if y.is_empty() || s == 0.0 {
        return vec![0.0; y.len()];
    }
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &v) in u.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - s) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    y.iter().map(|v| (v - theta).max(0.0)).collect()
}

/// Nearest point of the ℓ1 ball `{‖z‖₁ ≤ radius}`.
pub fn project_l1_ball(y: &[f64], radius: f64) -> Vec<f64> {
    if norm1(y) <= radius {
        return y.to_vec();
    }
    let abs: Vec<f64> = y.iter().map(|v| v.abs()).collect();
    project_simplex(&abs, radius)
        .into_iter()
        .zip(y)
        .map(|(p, v)| p.copysign(*v))
        .collect()
}

/// A halfspace `{x : ⟨normal, x⟩ ≤ offset}` that contains `{x : A x ∈ Q}`
/// and excludes a given point.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingHalfspace {
    /// `Aᵀw`.
    pub normal: Vec<f64>,
    pub offset: f64,
    /// `w = A x̃ − P_Q(A x̃)`.
    pub w: Vec<f64>,
    pub w_norm_sq: f64,
}

/// Threshold below which `A x ∈ Q` counts as satisfied.
pub fn feasibility_threshold(ax: &[f64]) -> f64 {
    1e-12 * (1.0 + norm2(ax))
}

/// Builds the halfspace with `w = A x̃ − P_Q(A x̃)` and
/// `β = ⟨Aᵀw, x̃⟩ − ‖w‖²`.
pub fn separating_halfspace(
    op: &dyn LinearOperator,
    q: &RangeSet,
    x_tilde: &[f64],
) -> Result<SeparatingHalfspace> {
    check_dim(op.cols(), x_tilde.len())?;
    let ax = op.apply(x_tilde);
    separating_halfspace_from_image(op, q, x_tilde, &ax)
}

pub(crate) fn separating_halfspace_from_image(
    op: &dyn LinearOperator,
    q: &RangeSet,
    x_tilde: &[f64],
    ax: &[f64],
) -> Result<SeparatingHalfspace> {
    let w = sub(ax, &project_orthogonal(q, ax)?);
    let w_norm_sq = norm2_sq(&w);
    if w_norm_sq.sqrt() <= feasibility_threshold(ax) {
        return Err(Error::FeasiblePoint {
            residual: w_norm_sq.sqrt(),
        });
    }
    let normal = op.apply_adjoint(&w);
    let offset = dot(&normal, x_tilde) - w_norm_sq;
    Ok(SeparatingHalfspace {
        normal,
        offset,
        w,
        w_norm_sq,
    })
}

/// Bregman projection onto `{x : ⟨a, x⟩ = β}`. Returns the new pair and
/// the dual step `t̂` with `z* = x* − t̂·a`.
pub fn bregman_project_hyperplane(
    obj: &dyn Objective,
    pair: &PrimalDualPair,
    a: &[f64],
    beta: f64,
) -> Result<(PrimalDualPair, f64)> {
    project_along(obj, pair, a, beta, Domain::Real)
}

/// Bregman projection onto `{x : ⟨a, x⟩ ≤ β}`; `t̂ = 0` when the point
/// already lies in the halfspace.
pub fn bregman_project_halfspace(
    obj: &dyn Objective,
    pair: &PrimalDualPair,
    a: &[f64],
    beta: f64,
) -> Result<(PrimalDualPair, f64)> {
    project_along(obj, pair, a, beta, Domain::Nonnegative)
}

fn project_along(
    obj: &dyn Objective,
    pair: &PrimalDualPair,
    a: &[f64],
    beta: f64,
    domain: Domain,
) -> Result<(PrimalDualPair, f64)> {
    check_dim(obj.dim(), a.len())?;
    check_dim(obj.dim(), pair.dim())?;
    if a.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroNormal);
    }
    let t = exact_linesearch(obj, pair.x_star(), a, beta, domain)?;
    let mut out = pair.clone();
    if t != 0.0 {
        out.dual_step(obj, t, a);
    }
    Ok((out, t))
}

/// Bregman projection onto the nonnegative orthant for
/// `f = λ‖·‖₁ + ½‖·‖²`: `z = S_λ(max(x*, 0))` with admissible subgradient
/// `max(x*, 0)`.
pub fn bregman_project_nonneg_elasticnet(lambda: f64, pair: &PrimalDualPair) -> PrimalDualPair {
    let z_star: Vec<f64> = pair.x_star().iter().map(|v| v.max(0.0)).collect();
    let z = z_star.iter().map(|&v| shrink(v, lambda)).collect();
    PrimalDualPair::from_parts_unchecked(z, z_star)
}

/// Bregman projection onto a box containing 0 for
/// `f = λ‖·‖₁ + ½‖·‖²`: `z = P_B(S_λ(x*))`.
///
/// The admissible subgradient keeps `x*_j` inside the box, is `b_j + λ`
/// above and `a_j − λ` below; at `z_j = 0` on a face through the origin it
/// is simplified to 0.
pub fn bregman_project_box_elasticnet(
    lambda: f64,
    lower: &[f64],
    upper: &[f64],
    pair: &PrimalDualPair,
) -> Result<PrimalDualPair> {
    check_dim(lower.len(), pair.dim())?;
    check_dim(upper.len(), pair.dim())?;
    if let Some(index) = lower
        .iter()
        .zip(upper)
        .position(|(l, u)| !(*l <= 0.0 && 0.0 <= *u))
    {
        return Err(Error::BoxWithoutZero { index });
    }
    let n = pair.dim();
    let mut z = Vec::with_capacity(n);
    let mut z_star = Vec::with_capacity(n);
    for j in 0..n {
        let xs = pair.x_star()[j];
        let s = shrink(xs, lambda);
        let (lo, hi) = (lower[j], upper[j]);
        let (zj, mut zs) = if s > hi {
            (hi, hi + lambda)
        } else if s < lo {
            (lo, lo - lambda)
        } else {
            (s, xs)
        };
        if zj == 0.0 && ((lo == 0.0 && xs < 0.0) || (hi == 0.0 && xs > 0.0)) {
            zs = 0.0;
        }
        z.push(zj);
        z_star.push(zs);
    }
    Ok(PrimalDualPair::from_parts_unchecked(z, z_star))
}

pub const AFFINE_MAX_ITERATIONS: usize = 10_000;
pub const AFFINE_GRADIENT_TOLERANCE: f64 = 1e-10;

/// Bregman projection onto `{x : A x = b}` by gradient descent on the dual
/// function `w ↦ f*(x* − Aᵀw) + ⟨w, b⟩` with the dynamic step
/// `α‖r‖²/‖Aᵀr‖²`, `r` the current residual; never shorter than `α/‖A‖²`.
pub fn bregman_project_affine(
    obj: &dyn Objective,
    pair: &PrimalDualPair,
    op: &dyn LinearOperator,
    b: &[f64],
) -> Result<PrimalDualPair> {
    check_dim(obj.dim(), op.cols())?;
    check_dim(op.rows(), b.len())?;
    check_dim(obj.dim(), pair.dim())?;
    let alpha = obj.alpha();
    let mut w = vec![0.0; op.rows()];
    let mut z_star = pair.x_star().to_vec();
    let mut z = pair.x().to_vec();
    let mut grad_norm = f64::INFINITY;
    for _ in 0..AFFINE_MAX_ITERATIONS {
        // ∇g(w) = b − A ∇f*(x* − Aᵀw)
        let grad = sub(b, &op.apply(&z));
        grad_norm = norm2(&grad);
        if grad_norm <= AFFINE_GRADIENT_TOLERANCE {
            return Ok(PrimalDualPair::from_parts_unchecked(z, z_star));
        }
        let direction = op.apply_adjoint(&grad);
        let d_sq = norm2_sq(&direction);
        if d_sq == 0.0 {
            // residual orthogonal to the range of A: b is not attainable
            return Err(Error::ZeroDirection);
        }
        let step = alpha * grad_norm * grad_norm / d_sq;
        axpy(-step, &grad, &mut w);
        axpy(step, &direction, &mut z_star);
        obj.grad_conjugate_into(&z_star, &mut z);
    }
    Err(Error::NoConvergence {
        iterations: AFFINE_MAX_ITERATIONS,
        residual: grad_norm,
    })
}

/// Bregman projection of `pair` onto a simple set.
///
/// Hyperplanes, halfspaces and affine subspaces work for every objective.
/// Boxes and the nonnegative cone need the elastic-net form. For the
/// squared norm every set reduces to the orthogonal projection.
pub fn bregman_project(
    obj: &dyn Objective,
    pair: &PrimalDualPair,
    set: &RangeSet,
) -> Result<PrimalDualPair> {
    check_dim(obj.dim(), pair.dim())?;
    let lambda = obj.l1_weight();
    if lambda == Some(0.0) && obj.alpha() == 1.0 {
        let z = project_orthogonal(set, pair.x())?;
        return Ok(PrimalDualPair::from_parts_unchecked(z.clone(), z));
    }
    match set {
        RangeSet::Hyperplane { normal, offset } => {
            Ok(bregman_project_hyperplane(obj, pair, normal, *offset)?.0)
        }
        RangeSet::Halfspace { normal, offset } => {
            Ok(bregman_project_halfspace(obj, pair, normal, *offset)?.0)
        }
        RangeSet::AffineSubspace { op, rhs } => bregman_project_affine(obj, pair, op.as_ref(), rhs),
        RangeSet::NonnegCone => match lambda {
            Some(l) => Ok(bregman_project_nonneg_elasticnet(l, pair)),
            None => Err(Error::Unsupported(format!(
                "Bregman projection onto the nonnegative cone for {obj:?}"
            ))),
        },
        RangeSet::Box { lower, upper } => match lambda {
            Some(l) => bregman_project_box_elasticnet(l, lower, upper, pair),
            None => Err(Error::Unsupported(format!(
                "Bregman projection onto a box for {obj:?}"
            ))),
        },
        RangeSet::Point(_) | RangeSet::NormBall { .. } => Err(Error::Unsupported(
            "Bregman projection onto points and norm balls; use a difficult constraint".into(),
        )),
    }
}

/// Whether [`bregman_project`] can handle `set` for `obj`.
pub fn supports_bregman(obj: &dyn Objective, set: &RangeSet) -> bool {
    let lambda = obj.l1_weight();
    if lambda == Some(0.0) && obj.alpha() == 1.0 {
        return true;
    }
    match set {
        RangeSet::Hyperplane { .. }
        | RangeSet::Halfspace { .. }
        | RangeSet::AffineSubspace { .. } => true,
        RangeSet::NonnegCone | RangeSet::Box { .. } => lambda.is_some(),
        RangeSet::Point(_) | RangeSet::NormBall { .. } => false,
    }
}

/// Max-norm of `y − P_Q(y)`.
pub fn residual_inf(q: &RangeSet, y: &[f64]) -> Result<f64> {
    Ok(norm_inf(&sub(y, &project_orthogonal(q, y)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::DenseMatrix;
    use crate::objectives::{ElasticNet, SquaredNorm};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn ball_residual_closed_forms() {
        let b = vec![1.0, 1.0];
        let q = RangeSet::norm_ball(Norm::Linf, b.clone(), 1.0).unwrap();
        let y = [3.0, 0.5];
        let res = sub(&y, &project_orthogonal(&q, &y).unwrap());
        assert!(close(&res, &[1.0, 0.0], 1e-15));

        let q = RangeSet::norm_ball(Norm::L2, vec![0.0, 0.0], 2.5).unwrap();
        let y = [3.0, 4.0];
        let res = sub(&y, &project_orthogonal(&q, &y).unwrap());
        assert!(close(&res, &[1.5, 2.0], 1e-15));

        let q = RangeSet::norm_ball(Norm::L1, vec![0.0, 0.0], 1.0).unwrap();
        assert!(close(
            &project_orthogonal(&q, &[2.0, -1.0]).unwrap(),
            &[1.0, 0.0],
            1e-15
        ));
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(project_simplex(&[1.0, 1.0], 1.0), vec![0.5, 0.5]);
        assert_eq!(project_simplex(&[2.0, 0.0], 1.0), vec![1.0, 0.0]);
        let y = [0.2, 0.3, 0.5];
        assert!(close(&project_simplex(&y, 1.0), &y, 1e-15));
    }

    #[test]
    fn dimension_mismatch_reported() {
        let q = RangeSet::Point(vec![1.0, 2.0]);
        assert!(matches!(
            project_orthogonal(&q, &[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn separating_halfspace_examples() {
        let a = DenseMatrix::from_rows(&[vec![1.0]]).unwrap();
        let h = separating_halfspace(&a, &RangeSet::Point(vec![0.0]), &[2.0]).unwrap();
        assert_eq!(h.w, vec![2.0]);
        assert_eq!(h.offset, 0.0);
        assert!(dot(&h.normal, &[2.0]) > h.offset);
        assert!(dot(&h.normal, &[0.0]) <= h.offset);

        let ball = RangeSet::norm_ball(Norm::Linf, vec![0.0], 1.0).unwrap();
        let h = separating_halfspace(&a, &ball, &[3.0]).unwrap();
        assert_eq!(
            (h.w.clone(), h.offset, h.normal.clone()),
            (vec![2.0], 2.0, vec![2.0])
        );
        for x in [-1.0, 0.0, 1.0] {
            assert!(h.normal[0] * x <= h.offset);
        }
        assert!(h.normal[0] * 3.0 > h.offset);

        assert!(matches!(
            separating_halfspace(&a, &ball, &[0.5]),
            Err(Error::FeasiblePoint { .. })
        ));
    }

    #[test]
    fn hyperplane_projection_examples() {
        let sq = SquaredNorm::new(2);
        let pair = PrimalDualPair::zero(&sq);
        let (z, t) = bregman_project_hyperplane(&sq, &pair, &[1.0, 0.0], 2.0).unwrap();
        assert!(close(z.x(), &[2.0, 0.0], 1e-15));
        assert!((t + 2.0).abs() < 1e-15);

        let en = ElasticNet::new(1, 1.0).unwrap();
        let pair = PrimalDualPair::from_dual(&en, vec![2.0]).unwrap();
        let (z, t) = bregman_project_hyperplane(&en, &pair, &[1.0], 0.5).unwrap();
        assert!((t - 0.5).abs() < 1e-15);
        assert!((z.x_star()[0] - 1.5).abs() < 1e-15);
        assert!((z.x()[0] - 0.5).abs() < 1e-15);

        // already on the hyperplane: t̂ = 0
        let (z, t) = bregman_project_hyperplane(&en, &pair, &[1.0], 1.0).unwrap();
        assert_eq!(t, 0.0);
        assert_eq!(z, pair);

        assert!(matches!(
            bregman_project_hyperplane(&en, &pair, &[0.0], 1.0),
            Err(Error::ZeroNormal)
        ));
    }

    #[test]
    fn halfspace_projection_positive_step_outside() {
        let en = ElasticNet::new(2, 0.5).unwrap();
        let pair = PrimalDualPair::from_dual(&en, vec![3.0, -1.0]).unwrap();
        let a = [1.0, 1.0];
        assert!(dot(&a, pair.x()) > 0.5);
        let (z, t) = bregman_project_halfspace(&en, &pair, &a, 0.5).unwrap();
        assert!(t > 0.0);
        let (zh, th) = bregman_project_hyperplane(&en, &pair, &a, 0.5).unwrap();
        assert_eq!(t, th);
        assert_eq!(z, zh);
        // inside: unchanged
        let (z, t) = bregman_project_halfspace(&en, &pair, &a, 10.0).unwrap();
        assert_eq!((t, z), (0.0, pair));
    }

    #[test]
    fn nonneg_projection_examples() {
        let en = ElasticNet::new(3, 1.0).unwrap();
        let pair = PrimalDualPair::from_dual(&en, vec![2.0, -3.0, 0.5]).unwrap();
        let z = bregman_project_nonneg_elasticnet(1.0, &pair);
        assert_eq!(z.x(), &[1.0, 0.0, 0.0]);
        assert_eq!(z.x_star(), &[2.0, 0.0, 0.5]);
        assert!(z.is_consistent(&en));

        let sq = ElasticNet::new(2, 0.0).unwrap();
        let pair = PrimalDualPair::from_dual(&sq, vec![-1.0, 2.0]).unwrap();
        let z = bregman_project_nonneg_elasticnet(0.0, &pair);
        assert_eq!((z.x(), z.x_star()), (&[0.0, 2.0][..], &[0.0, 2.0][..]));

        let pair = PrimalDualPair::from_dual(&en, vec![4.0, 1.5, 1.0]).unwrap();
        let z = bregman_project_nonneg_elasticnet(1.0, &pair);
        assert_eq!(z.x(), &[3.0, 0.5, 0.0]);
    }

    #[test]
    fn box_projection_examples() {
        let en = ElasticNet::new(1, 1.0).unwrap();
        let p = |v: f64| PrimalDualPair::from_dual(&en, vec![v]).unwrap();

        let z = bregman_project_box_elasticnet(1.0, &[0.0], &[1.0], &p(3.0)).unwrap();
        assert_eq!((z.x()[0], z.x_star()[0]), (1.0, 2.0));

        let z = bregman_project_box_elasticnet(1.0, &[-1.0], &[1.0], &p(0.5)).unwrap();
        assert_eq!((z.x()[0], z.x_star()[0]), (0.0, 0.5));

        let z = bregman_project_box_elasticnet(1.0, &[0.0], &[1.0], &p(-4.0)).unwrap();
        assert_eq!((z.x()[0], z.x_star()[0]), (0.0, 0.0));
        assert!(z.is_consistent(&en));

        assert!(matches!(
            bregman_project_box_elasticnet(1.0, &[0.5], &[1.0], &p(1.0)),
            Err(Error::BoxWithoutZero { index: 0 })
        ));
    }

    #[test]
    fn affine_projection_squared_norm() {
        let sq = SquaredNorm::new(2);
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let z = bregman_project_affine(&sq, &PrimalDualPair::zero(&sq), &a, &[2.0]).unwrap();
        assert!(close(z.x(), &[2.0, 0.0], 1e-10));
    }

    #[test]
    fn single_row_affine_equals_hyperplane() {
        let en = ElasticNet::new(3, 0.4).unwrap();
        let pair = PrimalDualPair::from_dual(&en, vec![1.0, -0.2, 0.7]).unwrap();
        let row = vec![0.5, 1.0, -1.0];
        let a = DenseMatrix::from_rows(std::slice::from_ref(&row)).unwrap();
        let z_aff = bregman_project_affine(&en, &pair, &a, &[1.3]).unwrap();
        let (z_hyp, _) = bregman_project_hyperplane(&en, &pair, &row, 1.3).unwrap();
        assert!(
            close(z_aff.x(), z_hyp.x(), 1e-8),
            "{:?} vs {:?}",
            z_aff.x(),
            z_hyp.x()
        );
    }

    #[test]
    fn orthogonal_affine_projection() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0, 0.0], vec![0.0, 1.0, -1.0]]).unwrap();
        let q = RangeSet::affine(Arc::new(a.clone()), vec![1.0, 2.0]).unwrap();
        let p = project_orthogonal(&q, &[3.0, -1.0, 4.0]).unwrap();
        assert!(close(&a.apply(&p), &[1.0, 2.0], 1e-12));
        // idempotent
        assert!(close(&project_orthogonal(&q, &p).unwrap(), &p, 1e-12));
    }

    #[test]
    fn unsupported_simple_sets() {
        let en = ElasticNet::new(2, 1.0).unwrap();
        let pair = PrimalDualPair::zero(&en);
        assert!(bregman_project(&en, &pair, &RangeSet::Point(vec![1.0, 1.0])).is_err());
        let sq = SquaredNorm::new(2);
        // squared norm: any set via the orthogonal projection
        let z = bregman_project(
            &sq,
            &PrimalDualPair::zero(&sq),
            &RangeSet::Point(vec![1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(z.x(), &[1.0, 1.0]);
    }
}
