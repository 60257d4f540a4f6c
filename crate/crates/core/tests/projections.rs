use std::sync::Arc;

use bpsfp::linops::{DenseMatrix, LinearOperator};
use bpsfp::objectives::{ElasticNet, PrimalDualPair, SquaredNorm};
use bpsfp::projections::{
    bregman_project_affine, bregman_project_box_elasticnet, bregman_project_halfspace,
    bregman_project_hyperplane, bregman_project_nonneg_elasticnet, project_l1_ball,
    project_orthogonal, project_simplex, separating_halfspace, RangeSet,
};
use bpsfp::vector::{dist2, dot, norm2, norm2_sq, norm_inf, sub, Norm};
use bpsfp::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{elastic_bregman, l1_ball_oracle, simplex_oracle};

const SLACK: f64 = 1e-9;

fn vec_of(n: usize, range: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-range..range, n)
}

/// `(x*, a, β)` with `‖a‖ ≥ 0.1`.
fn line_case() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, f64)> {
    (1usize..8)
        .prop_flat_map(|n| (vec_of(n, 3.0), vec_of(n, 2.0), -3.0..3.0f64))
        .prop_filter("nonzero normal", |(_, a, _)| norm2(a) >= 0.1)
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, range: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-range..range)).collect()
}

/// Checks the variational inequality and the three-point decrease of an
/// elastic-net Bregman projection `(x, x*) ↦ (z, z*)` on points `ys` of
/// the target set.
fn check_projection(
    lambda: f64,
    from: &PrimalDualPair,
    to: &PrimalDualPair,
    ys: &[Vec<f64>],
    slack: f64,
) {
    let (x, xs) = (from.x(), from.x_star());
    let (z, zs) = (to.x(), to.x_star());
    let d_xz = elastic_bregman(x, xs, z, lambda);
    for y in ys {
        let vi = dot(&sub(zs, xs), &sub(y, z));
        assert!(vi >= -slack, "variational inequality {vi}");
        let lhs = elastic_bregman(z, zs, y, lambda);
        let rhs = elastic_bregman(x, xs, y, lambda) - d_xz;
        assert!(lhs <= rhs + slack, "three-point decrease {lhs} > {rhs}");
    }
}

fn assert_consistent(lambda: f64, p: &PrimalDualPair) {
    for (x, s) in p.x().iter().zip(p.x_star()) {
        let expected = s.signum() * (s.abs() - lambda).max(0.0);
        assert!((x - expected).abs() <= 1e-12 * (1.0 + s.abs()));
    }
}

proptest! {
    #[test]
    fn hyperplane_projection_elastic_net((x_star, a, beta) in line_case(), lambda in 0.0..2.0f64, seed in any::<u64>()) {
        let obj = ElasticNet::new(a.len(), lambda).unwrap();
        let pair = PrimalDualPair::from_dual(&obj, x_star).unwrap();
        let (z, _) = bregman_project_hyperplane(&obj, &pair, &a, beta).unwrap();
        assert_consistent(lambda, &z);
        prop_assert!((dot(&a, z.x()) - beta).abs() <= 1e-9 * (1.0 + beta.abs() + norm2(&a) * norm2(z.x())));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let aa = norm2_sq(&a);
        let ys: Vec<Vec<f64>> = (0..100)
            .map(|_| {
                let mut y = random_vec(&mut rng, a.len(), 4.0);
                let c = (beta - dot(&a, &y)) / aa;
                y.iter_mut().zip(&a).for_each(|(v, ai)| *v += c * ai);
                y
            })
            .collect();
        check_projection(lambda, &pair, &z, &ys, SLACK);
    }

    #[test]
    fn halfspace_projection_elastic_net((x_star, a, beta) in line_case(), lambda in 0.0..2.0f64, seed in any::<u64>()) {
        let obj = ElasticNet::new(a.len(), lambda).unwrap();
        let pair = PrimalDualPair::from_dual(&obj, x_star).unwrap();
        let (z, t) = bregman_project_halfspace(&obj, &pair, &a, beta).unwrap();
        prop_assert!(t >= 0.0);
        assert_consistent(lambda, &z);
        let tol = 1e-9 * (1.0 + beta.abs() + norm2(&a) * norm2(z.x()));
        prop_assert!(dot(&a, z.x()) <= beta + tol);
        if dot(&a, pair.x()) > beta + tol {
            prop_assert!(t > 0.0);
            prop_assert!((dot(&a, z.x()) - beta).abs() <= tol);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let aa = norm2_sq(&a);
        let ys: Vec<Vec<f64>> = (0..100)
            .map(|_| {
                let mut y = random_vec(&mut rng, a.len(), 4.0);
                let excess = dot(&a, &y) - beta;
                if excess > 0.0 {
                    let c = excess / aa + rng.random_range(0.0..1.0);
                    y.iter_mut().zip(&a).for_each(|(v, ai)| *v -= c * ai);
                }
                y
            })
            .collect();
        check_projection(lambda, &pair, &z, &ys, SLACK);
    }

    #[test]
    fn nonneg_projection_elastic_net(x_star in (1usize..8).prop_flat_map(|n| vec_of(n, 3.0)), lambda in 0.0..2.0f64, seed in any::<u64>()) {
        let obj = ElasticNet::new(x_star.len(), lambda).unwrap();
        let pair = PrimalDualPair::from_dual(&obj, x_star).unwrap();
        let z = bregman_project_nonneg_elasticnet(lambda, &pair);
        prop_assert!(z.x().iter().all(|&v| v >= 0.0));
        assert_consistent(lambda, &z);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ys: Vec<Vec<f64>> = (0..100).map(|_| (0..z.dim()).map(|_| rng.random_range(0.0..4.0)).collect()).collect();
        check_projection(lambda, &pair, &z, &ys, SLACK);
    }

    #[test]
    fn box_projection_elastic_net(
        (x_star, lower, upper) in (1usize..8).prop_flat_map(|n| (
            vec_of(n, 3.0),
            prop::collection::vec(-2.0..=0.0f64, n),
            prop::collection::vec(0.0..=2.0f64, n),
        )),
        lambda in 0.0..2.0f64,
        seed in any::<u64>(),
    ) {
        let obj = ElasticNet::new(x_star.len(), lambda).unwrap();
        let pair = PrimalDualPair::from_dual(&obj, x_star).unwrap();
        let z = bregman_project_box_elasticnet(lambda, &lower, &upper, &pair).unwrap();
        for ((v, l), u) in z.x().iter().zip(&lower).zip(&upper) {
            prop_assert!(*l <= *v && *v <= *u);
        }
        assert_consistent(lambda, &z);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ys: Vec<Vec<f64>> = (0..100)
            .map(|_| lower.iter().zip(&upper).map(|(l, u)| l + (u - l) * rng.random::<f64>()).collect())
            .collect();
        check_projection(lambda, &pair, &z, &ys, SLACK);
    }

    #[test]
    fn affine_projection_elastic_net(n in 3usize..7, lambda in 0.0..1.5f64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DenseMatrix::from_row_major(2, n, random_vec(&mut rng, 2 * n, 1.0)).unwrap();
        let b = random_vec(&mut rng, 2, 2.0);
        let op: Arc<dyn LinearOperator> = Arc::new(a);
        let obj = ElasticNet::new(n, lambda).unwrap();
        let pair = PrimalDualPair::from_dual(&obj, random_vec(&mut rng, n, 3.0)).unwrap();
        // nearly parallel rows can exhaust the inner iteration cap; that is
        // reported as an error, never as a wrong projection
        let z = match bregman_project_affine(&obj, &pair, op.as_ref(), &b) {
            Ok(z) => z,
            Err(Error::NoConvergence { .. }) => return Err(TestCaseError::reject("inner solver cap")),
            Err(e) => panic!("{e}"),
        };
        assert_consistent(lambda, &z);
        prop_assert!(norm_inf(&sub(&op.apply(z.x()), &b)) <= 1e-8);
        let set = RangeSet::affine(op.clone(), b.clone()).unwrap();
        let ys: Vec<Vec<f64>> = (0..100)
            .map(|_| project_orthogonal(&set, &random_vec(&mut rng, n, 4.0)).unwrap())
            .collect();
        check_projection(lambda, &pair, &z, &ys, 1e-8);
    }

    #[test]
    fn squared_norm_reduces_to_orthogonal((x, a, beta) in line_case(), seed in any::<u64>()) {
        let n = x.len();
        let sq = SquaredNorm::new(n);
        let pair = PrimalDualPair::new(&sq, x.clone(), x.clone()).unwrap();
        let close = |p: &[f64], q: &[f64]| dist2(p, q) <= 1e-10 * (1.0 + norm2(q));

        let (h, _) = bregman_project_hyperplane(&sq, &pair, &a, beta).unwrap();
        prop_assert!(close(h.x(), &project_orthogonal(&RangeSet::hyperplane(a.clone(), beta).unwrap(), &x).unwrap()));
        let (hs, _) = bregman_project_halfspace(&sq, &pair, &a, beta).unwrap();
        prop_assert!(close(hs.x(), &project_orthogonal(&RangeSet::halfspace(a.clone(), beta).unwrap(), &x).unwrap()));

        // elastic net with λ = 0 is the squared norm
        let en = ElasticNet::new(n, 0.0).unwrap();
        let en_pair = PrimalDualPair::from_dual(&en, x.clone()).unwrap();
        let nn = bregman_project_nonneg_elasticnet(0.0, &en_pair);
        prop_assert!(close(nn.x(), &project_orthogonal(&RangeSet::NonnegCone, &x).unwrap()));
        let (lo, hi) = (vec![-0.5; n], vec![1.0; n]);
        let bx = bregman_project_box_elasticnet(0.0, &lo, &hi, &en_pair).unwrap();
        prop_assert!(close(bx.x(), &project_orthogonal(&RangeSet::boxed(lo, hi).unwrap(), &x).unwrap()));

        if n >= 3 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let op: Arc<dyn LinearOperator> =
                Arc::new(DenseMatrix::from_row_major(2, n, random_vec(&mut rng, 2 * n, 1.0)).unwrap());
            let b = random_vec(&mut rng, 2, 2.0);
            let af = match bregman_project_affine(&sq, &pair, op.as_ref(), &b) {
                Ok(z) => z,
                Err(Error::NoConvergence { .. }) => return Err(TestCaseError::reject("inner solver cap")),
                Err(e) => panic!("{e}"),
            };
            let orth = project_orthogonal(&RangeSet::affine(op, b).unwrap(), &x).unwrap();
            prop_assert!(dist2(af.x(), &orth) <= 1e-8 * (1.0 + norm2(&orth)));
        }
    }

    #[test]
    fn orthogonal_projections_idempotent_and_nonexpansive(
        (y1, y2, center, lower) in (1usize..8).prop_flat_map(|n| (vec_of(n, 5.0), vec_of(n, 5.0), vec_of(n, 1.0), vec_of(n, 1.0))),
        radius in 0.0..3.0f64,
        offset in -2.0..2.0f64,
    ) {
        let n = y1.len();
        let upper: Vec<f64> = lower.iter().map(|l| l + 1.5).collect();
        let mut normal = center.clone();
        normal[0] += 1.5;
        let sets = vec![
            RangeSet::norm_ball(Norm::L1, center.clone(), radius).unwrap(),
            RangeSet::norm_ball(Norm::L2, center.clone(), radius).unwrap(),
            RangeSet::norm_ball(Norm::Linf, center.clone(), radius).unwrap(),
            RangeSet::boxed(lower, upper).unwrap(),
            RangeSet::NonnegCone,
            RangeSet::hyperplane(normal.clone(), offset).unwrap(),
            RangeSet::halfspace(normal, offset).unwrap(),
            RangeSet::Point(center.clone()),
        ];
        for set in &sets {
            let p1 = project_orthogonal(set, &y1).unwrap();
            let p2 = project_orthogonal(set, &y2).unwrap();
            prop_assert_eq!(p1.len(), n);
            let again = project_orthogonal(set, &p1).unwrap();
            prop_assert!(dist2(&again, &p1) <= 1e-12 * (1.0 + norm2(&p1)), "{:?} not idempotent", set);
            prop_assert!(dist2(&p1, &p2) <= dist2(&y1, &y2) + 1e-12, "{:?} expands", set);
            prop_assert!(set.distance(&p1).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn simplex_and_l1_ball_match_kkt_oracle(y in (1usize..=10).prop_flat_map(|n| vec_of(n, 3.0)), s in 0.05..4.0f64) {
        prop_assert!(norm_inf(&sub(&project_simplex(&y, s), &simplex_oracle(&y, s))) <= 1e-8);
        prop_assert!(norm_inf(&sub(&project_l1_ball(&y, s), &l1_ball_oracle(&y, s))) <= 1e-8);
    }

    #[test]
    fn separating_halfspace_contains_preimage_and_excludes_point(n in 4usize..8, radius in 0.1..2.0f64, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let op: Arc<dyn LinearOperator> =
            Arc::new(DenseMatrix::from_row_major(3, n, random_vec(&mut rng, 3 * n, 1.0)).unwrap());
        let center = random_vec(&mut rng, 3, 1.0);
        let q = RangeSet::norm_ball(Norm::L2, center.clone(), radius).unwrap();
        let x_tilde = random_vec(&mut rng, n, 3.0);
        prop_assume!(q.distance(&op.apply(&x_tilde)).unwrap() > 1e-3);
        let h = separating_halfspace(op.as_ref(), &q, &x_tilde).unwrap();
        prop_assert!(dot(&h.normal, &x_tilde) > h.offset);
        for _ in 0..20 {
            // a point of Q and a preimage of it
            let dir = random_vec(&mut rng, 3, 1.0);
            let scale = radius * rng.random::<f64>() / norm2(&dir).max(1e-12);
            let target: Vec<f64> = center.iter().zip(&dir).map(|(c, d)| c + scale * d).collect();
            let x = project_orthogonal(&RangeSet::affine(op.clone(), target).unwrap(), &random_vec(&mut rng, n, 3.0)).unwrap();
            prop_assert!(dot(&h.normal, &x) <= h.offset + 1e-9 * (1.0 + h.offset.abs()));
        }
    }
}
