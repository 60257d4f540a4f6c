use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::noise::{inject_noise, NoiseModel};
use super::pgm::write_pgm;
use super::phantom::Phantom;
use super::write_text;
use crate::error::{Error, Result};
use crate::linops::{
    build_parallel_projector, BlockMode, BlockRow, Grad2D, LinearOperator, ParallelBeamGeometry,
    ParallelProjector, ScaledIdentity,
};
use crate::objectives::{GroupElasticNet, Groups, Objective, ProductObjective, SquaredNorm};
use crate::projections::RangeSet;
use crate::solver::{Constraint, Solver, SolverConfig, StepRule, Termination};
use crate::vector::{dist2, norm2, sub, Norm};

/// Which prior knowledge joins the data and gradient constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TomoVariant {
    /// `‖Au − b^δ‖₂ ≤ δ`, `∇u = p`.
    Plain,
    /// Adds `u ≥ 0`.
    Pos,
    /// Adds `u ≥ 0` and `𝟙ᵀu = c`.
    One,
}

impl TomoVariant {
    pub const ALL: [TomoVariant; 3] = [TomoVariant::Plain, TomoVariant::Pos, TomoVariant::One];

    pub fn name(self) -> &'static str {
        match self {
            TomoVariant::Plain => "tv_plain",
            TomoVariant::Pos => "tv_pos",
            TomoVariant::One => "tv_one",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PhantomKind {
    #[default]
    SheppLogan,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyConfig {
    #[serde(default = "default_size")]
    pub size: usize,
    #[serde(default = "default_angles")]
    pub angles: usize,
    #[serde(default = "default_rays")]
    pub rays: usize,
    #[serde(default)]
    pub phantom: PhantomKind,
    /// Relative Gaussian noise level.
    #[serde(default = "default_noise")]
    pub noise_level: f64,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_step")]
    pub step: StepRule,
    #[serde(default = "default_variants")]
    pub variants: Vec<TomoVariant>,
    /// Cap on iterations, one iteration being a pass over all constraints.
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// Target for `‖Au − b^δ‖₂ − δ`.
    #[serde(default = "default_data_tolerance")]
    pub data_tolerance: f64,
    /// Target for `‖∇u − p‖₂`.
    #[serde(default = "default_grad_tolerance")]
    pub grad_tolerance: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_size() -> usize {
    32
}
fn default_angles() -> usize {
    12
}
fn default_rays() -> usize {
    46
}
fn default_noise() -> f64 {
    0.05
}
fn default_lambda() -> f64 {
    1.0
}
fn default_step() -> StepRule {
    StepRule::Dynamic
}
fn default_variants() -> Vec<TomoVariant> {
    TomoVariant::ALL.to_vec()
}
fn default_max_iterations() -> usize {
    3000
}
fn default_data_tolerance() -> f64 {
    1e-3
}
fn default_grad_tolerance() -> f64 {
    1e-2
}

impl Default for TomographyConfig {
    fn default() -> Self {
        Self {
            size: default_size(),
            angles: default_angles(),
            rays: default_rays(),
            phantom: PhantomKind::default(),
            noise_level: default_noise(),
            lambda: default_lambda(),
            step: default_step(),
            variants: default_variants(),
            max_iterations: default_max_iterations(),
            data_tolerance: default_data_tolerance(),
            grad_tolerance: default_grad_tolerance(),
            seed: 0,
        }
    }
}

/// Measured data and operators shared by all variants.
#[derive(Debug, Clone)]
pub struct TomographySetup {
    pub height: usize,
    pub width: usize,
    pub phantom: Vec<f64>,
    pub projector: Arc<ParallelProjector>,
    pub b_delta: Vec<f64>,
    pub delta: f64,
    /// Estimate of `𝟙ᵀu†` from the data.
    pub mass: f64,
}

pub fn tomography_setup(config: &TomographyConfig) -> Result<TomographySetup> {
    let (h, w) = (config.size, config.size);
    let phantom = match config.phantom {
        PhantomKind::SheppLogan => Phantom::shepp_logan(h, w),
        PhantomKind::Empty => Phantom::empty(h, w),
    }
    .render();
    let geometry = ParallelBeamGeometry::uniform(h, w, config.angles, config.rays);
    let projector = build_parallel_projector(&geometry)?;
    let b = projector.matrix.apply(&phantom);
    let data = inject_noise(
        &b,
        &NoiseModel::Gaussian {
            level: config.noise_level,
        },
        config.seed,
    )?;
    let mass = projector.mass_estimate(&data.b_delta);
    Ok(TomographySetup {
        height: h,
        width: w,
        phantom,
        projector: Arc::new(projector),
        b_delta: data.b_delta,
        delta: data.delta,
        mass,
    })
}

/// Objective and constraints over `(u, p)` with `p` of length `2·H·W`.
/// Constraint 0 is the data ball, constraint 1 is `∇u − p = 0`.
pub fn tomography_problem(
    setup: &TomographySetup,
    lambda: f64,
    variant: TomoVariant,
) -> Result<(Arc<dyn Objective>, Vec<Constraint>)> {
    let n = setup.height * setup.width;
    let total = 3 * n;
    let objective = ProductObjective::new(vec![
        Box::new(SquaredNorm::new(n)),
        Box::new(GroupElasticNet::new(lambda, Groups::pairs(n))?),
    ])?;
    let a: Arc<dyn LinearOperator> = Arc::new(setup.projector.matrix.clone());
    let data_op = BlockRow::new(total, BlockMode::Sum, vec![(a, 0)])?;
    let grad: Arc<dyn LinearOperator> = Arc::new(Grad2D::new(setup.height, setup.width));
    let minus_id: Arc<dyn LinearOperator> = Arc::new(ScaledIdentity::new(2 * n, -1.0));
    let grad_op = BlockRow::new(total, BlockMode::Sum, vec![(grad, 0), (minus_id, n)])?;
    let mut constraints = vec![
        Constraint::difficult(
            Arc::new(data_op),
            RangeSet::norm_ball(Norm::L2, setup.b_delta.clone(), setup.delta)?,
        ),
        Constraint::difficult(Arc::new(grad_op), RangeSet::Point(vec![0.0; 2 * n])),
    ];
    if matches!(variant, TomoVariant::Pos | TomoVariant::One) {
        constraints.push(Constraint::simple_on(RangeSet::NonnegCone, 0..n));
    }
    if variant == TomoVariant::One {
        constraints.push(Constraint::simple_on(
            RangeSet::hyperplane(vec![1.0; n], setup.mass)?,
            0..n,
        ));
    }
    Ok((Arc::new(objective), constraints))
}

#[derive(Debug, Clone)]
pub struct VariantRun {
    pub variant: TomoVariant,
    /// `‖Au_k − b^δ‖₂ − δ` after each iteration, starting at 0.
    pub data_violation: Vec<f64>,
    /// `‖∇u_k − p_k‖₂` after each iteration.
    pub grad_violation: Vec<f64>,
    pub u: Vec<f64>,
    /// `‖u† − u‖₂`.
    pub error: f64,
    pub iterations: usize,
    pub steps: usize,
    /// Time spent inside solver steps.
    pub step_time_ms: f64,
    pub termination: Termination,
}

impl VariantRun {
    pub fn ms_per_iteration(&self) -> f64 {
        self.step_time_ms / self.iterations.max(1) as f64
    }

    pub fn ms_per_step(&self) -> f64 {
        self.step_time_ms / self.steps.max(1) as f64
    }
}

#[derive(Debug, Clone)]
pub struct TomographyReport {
    pub setup: TomographySetup,
    pub runs: Vec<VariantRun>,
}

pub fn run_tomography(config: &TomographyConfig) -> Result<TomographyReport> {
    if config.variants.is_empty() {
        return Err(Error::InvalidParameter("no tomography variants".into()));
    }
    let setup = tomography_setup(config)?;
    let runs = config
        .variants
        .iter()
        .map(|&v| run_variant(&setup, config, v))
        .collect::<Result<_>>()?;
    Ok(TomographyReport { setup, runs })
}

fn run_variant(
    setup: &TomographySetup,
    config: &TomographyConfig,
    variant: TomoVariant,
) -> Result<VariantRun> {
    let n = setup.height * setup.width;
    let (objective, constraints) = tomography_problem(setup, config.lambda, variant)?;
    let m = constraints.len();
    let mut cfg = SolverConfig::new(objective, constraints);
    cfg.step = config.step;
    cfg.max_iterations = usize::MAX;
    let mut solver = Solver::new(cfg)?;
    let (mut data_violation, mut grad_violation) = (Vec::new(), Vec::new());
    let mut step_time = 0.0;
    let mut iterations = 0;
    let termination = loop {
        let data = norm2(&sub(
            solver.constraint_image(0).expect("data"),
            &setup.b_delta,
        )) - setup.delta;
        let grad = norm2(solver.constraint_image(1).expect("gradient"));
        data_violation.push(data);
        grad_violation.push(grad);
        if data <= config.data_tolerance && grad <= config.grad_tolerance {
            break Termination::Tolerance;
        }
        if iterations >= config.max_iterations {
            break Termination::MaxIter;
        }
        let start = Instant::now();
        for _ in 0..m {
            solver.advance()?;
        }
        step_time += start.elapsed().as_secs_f64() * 1e3;
        iterations += 1;
    };
    let u = solver.pair().x()[..n].to_vec();
    Ok(VariantRun {
        variant,
        data_violation,
        grad_violation,
        error: dist2(&u, &setup.phantom),
        u,
        iterations,
        steps: solver.iteration(),
        step_time_ms: step_time,
        termination,
    })
}

impl TomographyReport {
    pub fn run(&self, variant: TomoVariant) -> Option<&VariantRun> {
        self.runs.iter().find(|r| r.variant == variant)
    }

    pub fn trace_csv(&self) -> String {
        let mut out = String::from("variant,iteration,data_violation,grad_violation\n");
        for r in &self.runs {
            for (k, (d, g)) in r.data_violation.iter().zip(&r.grad_violation).enumerate() {
                let _ = writeln!(out, "{},{k},{d},{g}", r.variant.name());
            }
        }
        out
    }

    /// Per-variant summary; `ms_per_iteration` is wall time.
    pub fn summary_csv(&self) -> String {
        let mut out =
            String::from("variant,iterations,termination,error,mass_estimate,ms_per_iteration\n");
        for r in &self.runs {
            let _ = writeln!(
                out,
                "{},{},{:?},{},{},{}",
                r.variant.name(),
                r.iterations,
                r.termination,
                r.error,
                self.setup.mass,
                r.ms_per_iteration()
            );
        }
        out
    }

    pub fn all_converged(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.termination == Termination::Tolerance)
    }

    /// CSV files plus PGM images of the phantom and every reconstruction,
    /// on the phantom's intensity scale.
    pub fn write(&self, dir: &Path) -> Result<()> {
        write_text(&dir.join("traces.csv"), &self.trace_csv())?;
        write_text(&dir.join("summary.csv"), &self.summary_csv())?;
        let (h, w) = (self.setup.height, self.setup.width);
        let top = self.setup.phantom.iter().copied().fold(0.0, f64::max);
        let range = (0.0, if top > 0.0 { top } else { 1.0 });
        write_pgm(dir.join("phantom.pgm"), &self.setup.phantom, h, w, range)?;
        for r in &self.runs {
            write_pgm(
                dir.join(format!("{}.pgm", r.variant.name())),
                &r.u,
                h,
                w,
                range,
            )?;
        }
        Ok(())
    }
}
