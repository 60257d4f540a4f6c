//! The BPSFP iteration: one Bregman projection per step, onto a simple set
//! or onto the separating halfspace of a difficult constraint `A x ∈ Q`.

mod history;
mod presets;

use std::ops::Range;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use history::{history_csv, write_history_csv, HISTORY_COLUMNS};
pub use presets::{preset, Preset};

use crate::error::{check_dim, Error, Result};
use crate::linesearch::{exact_linesearch, inexact_linesearch, Domain};
use crate::linops::{operator_norm, LinearOperator};
use crate::objectives::{Objective, PrimalDualPair};
use crate::projections::{
    bregman_project, bregman_project_halfspace, bregman_project_hyperplane, project_orthogonal,
    separating_halfspace_from_image, supports_bregman, RangeSet,
};
use crate::vector::{dot, norm2, norm2_sq, sub};

/// One constraint of a split feasibility problem.
#[derive(Debug, Clone)]
pub enum Constraint {
    /// `x ∈ C`, or `x[block] ∈ C` when a block is given.
    Simple {
        set: RangeSet,
        block: Option<Range<usize>>,
    },
    /// `A x ∈ Q`.
    Difficult {
        op: Arc<dyn LinearOperator>,
        q: RangeSet,
    },
}

impl Constraint {
    pub fn simple(set: RangeSet) -> Self {
        Constraint::Simple { set, block: None }
    }

    pub fn simple_on(set: RangeSet, block: Range<usize>) -> Self {
        Constraint::Simple {
            set,
            block: Some(block),
        }
    }

    pub fn difficult(op: Arc<dyn LinearOperator>, q: RangeSet) -> Self {
        Constraint::Difficult { op, q }
    }

    /// Euclidean violation at `x`: distance to the set, or
    /// `‖A x − P_Q(A x)‖₂`.
    pub fn violation(&self, x: &[f64]) -> Result<f64> {
        match self {
            Constraint::Simple { set, block } => {
                let part = match block {
                    Some(r) => &x[r.clone()],
                    None => x,
                };
                set.distance(part)
            }
            Constraint::Difficult { op, q } => {
                check_dim(op.cols(), x.len())?;
                let ax = op.apply(x);
                Ok(norm2(&sub(&ax, &project_orthogonal(q, &ax)?)))
            }
        }
    }
}

/// Rule `r(k)` picking the constraint treated at step `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlSequence {
    Cyclic,
    RandomUniform(u64),
    /// Repeated cyclically; must mention every constraint.
    Custom(Vec<usize>),
}

/// Step size for difficult constraints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// `α/‖A‖²`.
    Constant,
    /// `α‖w‖²/‖Aᵀw‖²`.
    Dynamic,
    /// Exact Bregman projection onto the separating halfspace.
    Exact,
    /// `c^p` times the dynamic step for the largest admissible `p ≤ p_cap`.
    Inexact { c: f64, p_cap: u32 },
}

pub const DEFAULT_P_CAP: u32 = 60;

impl StepRule {
    pub fn inexact(c: f64) -> Self {
        StepRule::Inexact {
            c,
            p_cap: DEFAULT_P_CAP,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StepRule::Constant => "constant",
            StepRule::Dynamic => "dynamic",
            StepRule::Exact => "exact",
            StepRule::Inexact { .. } => "inexact",
        }
    }
}

impl std::str::FromStr for StepRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(StepRule::Constant),
            "dynamic" => Ok(StepRule::Dynamic),
            "exact" => Ok(StepRule::Exact),
            "inexact" => Ok(StepRule::inexact(2.0)),
            _ => Err(Error::InvalidParameter(format!("unknown step rule `{s}`"))),
        }
    }
}

/// How often per-constraint violations are stored in the history.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ViolationTrace {
    EveryStep,
    /// Only where the stopping rule looks, i.e. at the end of each pass.
    #[default]
    EveryPass,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub objective: Arc<dyn Objective>,
    pub constraints: Vec<Constraint>,
    pub control: ControlSequence,
    pub step: StepRule,
    pub max_iterations: usize,
    pub residual_tolerance: f64,
    /// Starting dual point; zero when `None`.
    pub x0_star: Option<Vec<f64>>,
    pub trace: ViolationTrace,
}

impl SolverConfig {
    pub fn new(objective: Arc<dyn Objective>, constraints: Vec<Constraint>) -> Self {
        Self {
            objective,
            constraints,
            control: ControlSequence::Cyclic,
            step: StepRule::Dynamic,
            max_iterations: 1000,
            residual_tolerance: 1e-6,
            x0_star: None,
            trace: ViolationTrace::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.objective.dim();
        if self.constraints.is_empty() {
            return Err(Error::InvalidParameter("no constraints".into()));
        }
        if !(self.residual_tolerance > 0.0) {
            return Err(Error::InvalidParameter(
                "residual tolerance must be positive".into(),
            ));
        }
        if let StepRule::Inexact { c, .. } = self.step {
            if !(c > 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "inexact factor must exceed 1, got {c}"
                )));
            }
        }
        if let Some(x0) = &self.x0_star {
            check_dim(n, x0.len())?;
        }
        for c in &self.constraints {
            match c {
                Constraint::Simple { set, block } => {
                    let (obj, len) = match block {
                        Some(r) => {
                            if r.end > n || r.start >= r.end {
                                return Err(Error::IndexOutOfRange {
                                    index: r.end,
                                    len: n,
                                });
                            }
                            let obj = self.objective.block(r.clone()).ok_or_else(|| {
                                Error::Unsupported(format!(
                                    "objective does not separate along {r:?}"
                                ))
                            })?;
                            (obj, r.len())
                        }
                        None => (self.objective.as_ref(), n),
                    };
                    if let Some(d) = set.dim() {
                        check_dim(len, d)?;
                    }
                    if !supports_bregman(obj, set) {
                        return Err(Error::Unsupported(format!(
                            "no Bregman projection onto {set:?} for {obj:?}"
                        )));
                    }
                }
                Constraint::Difficult { op, q } => {
                    check_dim(n, op.cols())?;
                    if let Some(d) = q.dim() {
                        check_dim(op.rows(), d)?;
                    }
                }
            }
        }
        if let ControlSequence::Custom(list) = &self.control {
            let m = self.constraints.len();
            if let Some(&index) = list.iter().find(|&&i| i >= m) {
                return Err(Error::IndexOutOfRange { index, len: m });
            }
            if (0..m).any(|i| !list.contains(&i)) {
                return Err(Error::InvalidParameter(
                    "custom control sequence must visit every constraint".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub k: usize,
    /// `None` for the record of the starting point.
    pub constraint_index: Option<usize>,
    pub step_size: f64,
    pub w_norm: f64,
    /// `‖Aᵀw‖₂`.
    pub direction_norm: f64,
    pub violations: Option<Vec<f64>>,
    pub objective_value: f64,
    pub elapsed_ms: f64,
}

impl IterationRecord {
    pub fn max_violation(&self) -> Option<f64> {
        self.violations
            .as_ref()
            .map(|v| v.iter().copied().fold(0.0, f64::max))
    }
}

/// What a single step did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    pub constraint_index: usize,
    /// `t_k`; 0 for skipped steps and for projections without a line search.
    pub step_size: f64,
    /// `‖w_k‖₂` on difficult steps.
    pub w_norm: f64,
    /// `‖Aᵀw_k‖₂` on difficult steps.
    pub direction_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    Tolerance,
    MaxIter,
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    pub pair: PrimalDualPair,
    pub history: Vec<IterationRecord>,
    pub reason: Termination,
    pub iterations: usize,
}

/// Stepwise driver; [`run`] loops it.
#[derive(Debug)]
pub struct Solver {
    config: SolverConfig,
    constraints: Arc<[Constraint]>,
    pair: PrimalDualPair,
    k: usize,
    rng: Option<ChaCha8Rng>,
    norms: Vec<Option<f64>>,
    /// `A_i x` for the current `x`.
    images: Vec<Option<Vec<f64>>>,
    start: Instant,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let obj = config.objective.clone();
        let pair = match &config.x0_star {
            Some(x0) => PrimalDualPair::from_dual(obj.as_ref(), x0.clone())?,
            None => PrimalDualPair::zero(obj.as_ref()),
        };
        let rng = match config.control {
            ControlSequence::RandomUniform(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let m = config.constraints.len();
        Ok(Self {
            constraints: config.constraints.clone().into(),
            config,
            pair,
            k: 0,
            rng,
            norms: vec![None; m],
            images: vec![None; m],
            start: Instant::now(),
        })
    }

    pub fn pair(&self) -> &PrimalDualPair {
        &self.pair
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Number of steps taken.
    pub fn iteration(&self) -> usize {
        self.k
    }

    fn next_index(&mut self) -> usize {
        let m = self.config.constraints.len();
        match &self.config.control {
            ControlSequence::Cyclic => self.k % m,
            ControlSequence::Custom(list) => list[self.k % list.len()],
            ControlSequence::RandomUniform(_) => {
                self.rng.as_mut().expect("seeded").random_range(0..m)
            }
        }
    }

    /// `A_i x` for a difficult constraint `i`, cached until `x` changes.
    pub fn constraint_image(&mut self, i: usize) -> Option<&[f64]> {
        match self.config.constraints.get(i)? {
            Constraint::Difficult { .. } => Some(self.image(i)),
            Constraint::Simple { .. } => None,
        }
    }

    fn image(&mut self, i: usize) -> &[f64] {
        if self.images[i].is_none() {
            let Constraint::Difficult { op, .. } = &self.config.constraints[i] else {
                unreachable!("images exist for difficult constraints only")
            };
            self.images[i] = Some(op.apply(self.pair.x()));
        }
        self.images[i].as_deref().expect("just filled")
    }

    fn op_norm(&mut self, i: usize) -> f64 {
        if let Some(n) = self.norms[i] {
            return n;
        }
        let Constraint::Difficult { op, .. } = &self.config.constraints[i] else {
            unreachable!("norms exist for difficult constraints only")
        };
        let n = operator_norm(op.as_ref()).value;
        self.norms[i] = Some(n);
        n
    }

    /// Per-constraint violations at the current iterate.
    pub fn violations(&mut self) -> Result<Vec<f64>> {
        let constraints = self.constraints.clone();
        let mut out = Vec::with_capacity(constraints.len());
        for (i, c) in constraints.iter().enumerate() {
            let v = match c {
                Constraint::Simple { .. } => c.violation(self.pair.x())?,
                Constraint::Difficult { q, .. } => {
                    let ax = self.image(i);
                    norm2(&sub(ax, &project_orthogonal(q, ax)?))
                }
            };
            out.push(v);
        }
        Ok(out)
    }

    fn record_start(&mut self, violations: Vec<f64>) -> IterationRecord {
        IterationRecord {
            k: 0,
            constraint_index: None,
            step_size: 0.0,
            w_norm: 0.0,
            direction_norm: 0.0,
            violations: Some(violations),
            objective_value: self.config.objective.value(self.pair.x()),
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
        }
    }

    /// One step of the iteration on constraint `r(k)`, with its record.
    pub fn step(&mut self) -> Result<IterationRecord> {
        let info = self.advance()?;
        let violations = match self.config.trace {
            ViolationTrace::EveryStep => Some(self.violations()?),
            ViolationTrace::EveryPass => None,
        };
        Ok(IterationRecord {
            k: self.k,
            constraint_index: Some(info.constraint_index),
            step_size: info.step_size,
            w_norm: info.w_norm,
            direction_norm: info.direction_norm,
            violations,
            objective_value: self.config.objective.value(self.pair.x()),
            elapsed_ms: self.start.elapsed().as_secs_f64() * 1e3,
        })
    }

    /// One step without building a history record.
    pub fn advance(&mut self) -> Result<StepInfo> {
        let i = self.next_index();
        self.k += 1;
        let obj = self.config.objective.clone();
        let constraints = self.constraints.clone();
        let (step_size, w_norm, direction_norm) = match &constraints[i] {
            Constraint::Simple { set, block } => {
                self.simple_step(obj.as_ref(), set, block.clone())?
            }
            Constraint::Difficult { op, q } => {
                self.difficult_step(obj.as_ref(), i, op.as_ref(), q)?
            }
        };
        Ok(StepInfo {
            constraint_index: i,
            step_size,
            w_norm,
            direction_norm,
        })
    }

    fn invalidate(&mut self) {
        self.images.iter_mut().for_each(|c| *c = None);
    }

    fn simple_step(
        &mut self,
        obj: &dyn Objective,
        set: &RangeSet,
        block: Option<Range<usize>>,
    ) -> Result<(f64, f64, f64)> {
        let (sub_obj, range) = match block {
            Some(r) => (obj.block(r.clone()).expect("validated"), r),
            None => (obj, 0..obj.dim()),
        };
        if is_orthogonal(sub_obj) {
            return self.orthogonal_step(set, range);
        }
        let local = PrimalDualPair::from_parts_unchecked(
            self.pair.x()[range.clone()].to_vec(),
            self.pair.x_star()[range.clone()].to_vec(),
        );
        let (projected, t) = match set {
            RangeSet::Hyperplane { normal, offset } => {
                bregman_project_hyperplane(sub_obj, &local, normal, *offset)?
            }
            RangeSet::Halfspace { normal, offset } => {
                bregman_project_halfspace(sub_obj, &local, normal, *offset)?
            }
            _ => (bregman_project(sub_obj, &local, set)?, 0.0),
        };
        if projected != local {
            let (px, ps) = projected.into_parts();
            let (x, x_star) = self.pair.parts_mut();
            x[range.clone()].copy_from_slice(&px);
            x_star[range].copy_from_slice(&ps);
            self.invalidate();
        }
        Ok((t, 0.0, 0.0))
    }

    /// Squared-norm block: the Bregman projection is the orthogonal one
    /// and the block of `x*` equals the block of `x`.
    fn orthogonal_step(&mut self, set: &RangeSet, range: Range<usize>) -> Result<(f64, f64, f64)> {
        let (x, x_star) = self.pair.parts_mut();
        let (x, x_star) = (&mut x[range.clone()], &mut x_star[range]);
        let mut changed = false;
        let mut t = 0.0;
        match set {
            RangeSet::NonnegCone => {
                for v in x.iter_mut() {
                    if *v < 0.0 {
                        *v = 0.0;
                        changed = true;
                    }
                }
            }
            RangeSet::Hyperplane { normal, offset } | RangeSet::Halfspace { normal, offset } => {
                check_dim(normal.len(), x.len())?;
                t = (dot(normal, x) - offset) / norm2_sq(normal);
                if matches!(set, RangeSet::Halfspace { .. }) {
                    t = t.max(0.0);
                }
                if t != 0.0 {
                    crate::vector::axpy(-t, normal, x);
                    changed = true;
                }
            }
            _ => {
                let p = project_orthogonal(set, x)?;
                changed = p.as_slice() != &*x;
                x.copy_from_slice(&p);
            }
        }
        if changed {
            x_star.copy_from_slice(x);
            self.invalidate();
        }
        Ok((t, 0.0, 0.0))
    }

    fn difficult_step(
        &mut self,
        obj: &dyn Objective,
        i: usize,
        op: &dyn LinearOperator,
        q: &RangeSet,
    ) -> Result<(f64, f64, f64)> {
        let ax = self.image(i).to_vec();
        let h = match separating_halfspace_from_image(op, q, self.pair.x(), &ax) {
            Ok(h) => h,
            Err(Error::FeasiblePoint { .. }) => return Ok((0.0, 0.0, 0.0)),
            Err(e) => return Err(e),
        };
        let w_norm = h.w_norm_sq.sqrt();
        let d_sq = norm2_sq(&h.normal);
        let direction_norm = d_sq.sqrt();
        if d_sq == 0.0 {
            // w lies in the null space of Aᵀ: Q misses the range of A
            return Err(Error::ZeroDirection);
        }
        let alpha = obj.alpha();
        let t = match self.config.step {
            StepRule::Constant => {
                let n = self.op_norm(i);
                alpha / (n * n)
            }
            StepRule::Dynamic => alpha * h.w_norm_sq / d_sq,
            StepRule::Exact => exact_linesearch(
                obj,
                self.pair.x_star(),
                &h.normal,
                h.offset,
                Domain::Nonnegative,
            )?,
            StepRule::Inexact { c, p_cap } => {
                let t_tilde = alpha * h.w_norm_sq / d_sq;
                inexact_linesearch(
                    obj,
                    self.pair.x_star(),
                    &h.normal,
                    h.offset,
                    t_tilde,
                    c,
                    p_cap,
                )
            }
        };
        if t != 0.0 {
            self.pair.dual_step(obj, t, &h.normal);
            self.invalidate();
        }
        Ok((t, w_norm, direction_norm))
    }
}

fn is_orthogonal(obj: &dyn Objective) -> bool {
    obj.l1_weight() == Some(0.0) && obj.alpha() == 1.0
}

/// Runs the iteration until every violation is at most the tolerance,
/// checked at the start and after each full pass over the constraints, or
/// until `max_iterations` steps.
pub fn run(config: SolverConfig) -> Result<SolverResult> {
    let mut solver = Solver::new(config)?;
    let m = solver.config.constraints.len();
    let tol = solver.config.residual_tolerance;
    let max_iterations = solver.config.max_iterations;
    let trace = solver.config.trace;

    let initial = solver.violations()?;
    let done = initial.iter().all(|&v| v <= tol);
    let mut history = vec![solver.record_start(initial)];
    if done {
        return Ok(finish(solver, history, Termination::Tolerance));
    }
    while solver.k < max_iterations {
        let mut record = solver.step()?;
        if solver.k % m == 0 {
            let v = match record.violations.take() {
                Some(v) => v,
                None => solver.violations()?,
            };
            let done = v.iter().all(|&x| x <= tol);
            record.violations = Some(v);
            history.push(record);
            if done {
                return Ok(finish(solver, history, Termination::Tolerance));
            }
        } else {
            debug_assert!(trace == ViolationTrace::EveryStep || record.violations.is_none());
            history.push(record);
        }
    }
    Ok(finish(solver, history, Termination::MaxIter))
}

fn finish(solver: Solver, history: Vec<IterationRecord>, reason: Termination) -> SolverResult {
    SolverResult {
        iterations: solver.k,
        pair: solver.pair,
        history,
        reason,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linops::DenseMatrix;
    use crate::objectives::{ElasticNet, SquaredNorm};

    fn dense(rows: &[Vec<f64>]) -> Arc<dyn LinearOperator> {
        Arc::new(DenseMatrix::from_rows(rows).unwrap())
    }

    #[test]
    fn minimal_error_step_by_hand() {
        let rows = vec![vec![1.0, 2.0, 0.0], vec![0.0, 1.0, -1.0]];
        let a = dense(&rows);
        let b = vec![1.0, 2.0];
        let mut cfg = SolverConfig::new(
            Arc::new(SquaredNorm::new(3)),
            vec![Constraint::difficult(a.clone(), RangeSet::Point(b.clone()))],
        );
        cfg.step = StepRule::Dynamic;
        let mut s = Solver::new(cfg).unwrap();
        s.step().unwrap();
        // from 0: r = −b, Aᵀr = (−1, −4, 2), t = 5/21
        let expected = [5.0 / 21.0, 20.0 / 21.0, -10.0 / 21.0];
        for (x, e) in s.pair().x().iter().zip(expected) {
            assert!((x - e).abs() < 1e-15);
        }
    }

    #[test]
    fn feasible_difficult_step_is_noop() {
        let a = dense(&[vec![1.0]]);
        let mut cfg = SolverConfig::new(
            Arc::new(SquaredNorm::new(1)),
            vec![Constraint::difficult(a, RangeSet::Point(vec![0.0]))],
        );
        cfg.step = StepRule::Exact;
        let mut s = Solver::new(cfg).unwrap();
        let rec = s.step().unwrap();
        assert_eq!(rec.step_size, 0.0);
        assert_eq!(s.pair().x(), &[0.0]);
    }

    #[test]
    fn zero_iterations() {
        let a = dense(&[vec![1.0, 1.0]]);
        let mut cfg = SolverConfig::new(
            Arc::new(SquaredNorm::new(2)),
            vec![Constraint::difficult(a, RangeSet::Point(vec![1.0]))],
        );
        cfg.max_iterations = 0;
        let r = run(cfg).unwrap();
        assert_eq!(r.reason, Termination::MaxIter);
        assert_eq!(r.pair.x(), &[0.0, 0.0]);
        assert_eq!(r.history.len(), 1);
    }

    #[test]
    fn feasible_start_terminates_immediately() {
        let a = dense(&[vec![1.0, 1.0]]);
        let q = RangeSet::norm_ball(crate::vector::Norm::L1, vec![0.5], 1.0).unwrap();
        let cfg = SolverConfig::new(
            Arc::new(ElasticNet::new(2, 1.0).unwrap()),
            vec![Constraint::difficult(a, q)],
        );
        let r = run(cfg).unwrap();
        assert_eq!((r.reason, r.iterations), (Termination::Tolerance, 0));
    }

    #[test]
    fn blocked_simple_constraint() {
        use crate::objectives::ProductObjective;
        let obj = ProductObjective::new(vec![
            Box::new(SquaredNorm::new(2)),
            Box::new(ElasticNet::new(2, 1.0).unwrap()),
        ])
        .unwrap();
        let cfg = SolverConfig::new(
            Arc::new(obj),
            vec![Constraint::simple_on(
                RangeSet::hyperplane(vec![1.0, 1.0], 2.0).unwrap(),
                0..2,
            )],
        );
        let r = run(cfg).unwrap();
        assert_eq!(r.reason, Termination::Tolerance);
        assert_eq!(r.pair.x(), &[1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_bad_custom_sequence() {
        let a = dense(&[vec![1.0]]);
        let mut cfg = SolverConfig::new(
            Arc::new(SquaredNorm::new(1)),
            vec![
                Constraint::difficult(a.clone(), RangeSet::Point(vec![1.0])),
                Constraint::difficult(a, RangeSet::Point(vec![1.0])),
            ],
        );
        cfg.control = ControlSequence::Custom(vec![0, 0]);
        assert!(Solver::new(cfg.clone()).is_err());
        cfg.control = ControlSequence::Custom(vec![0, 2]);
        assert!(matches!(
            Solver::new(cfg),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_unsupported_simple_set() {
        let cfg = SolverConfig::new(
            Arc::new(ElasticNet::new(2, 1.0).unwrap()),
            vec![Constraint::simple(RangeSet::Point(vec![1.0, 1.0]))],
        );
        assert!(matches!(Solver::new(cfg), Err(Error::Unsupported(_))));
    }
}
