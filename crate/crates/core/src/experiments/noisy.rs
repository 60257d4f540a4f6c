use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::instance::InstanceSpec;
use super::lambda::{resolve_instance, LambdaChoice, ResolvedInstance};
use super::noise::{inject_noise, NoiseModel, NoisyData};
use super::stepsize::rule_label;
use super::write_text;
use crate::comparator::{elastic_net_value, run_pd, PdConfig};
use crate::error::{Error, Result};
use crate::objectives::ElasticNet;
use crate::projections::RangeSet;
use crate::solver::{Constraint, Solver, SolverConfig, StepRule, Termination};
use crate::vector::{dist2, norm2, sub};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoisyConfig {
    pub instance: InstanceSpec,
    pub noise: NoiseModel,
    /// Seed of the noise draw; defaults to the instance seed plus one.
    #[serde(default)]
    pub noise_seed: Option<u64>,
    #[serde(default)]
    pub lambda: LambdaChoice,
    #[serde(default = "default_rules")]
    pub rules: Vec<StepRule>,
    /// Iterations of the primal-dual reference; 0 skips it.
    #[serde(default = "default_pd_iterations")]
    pub pd_iterations: usize,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// Stop once `‖A x − b^δ‖_p − δ ≤ tolerance`.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_rules() -> Vec<StepRule> {
    vec![StepRule::Dynamic, StepRule::Exact]
}

fn default_pd_iterations() -> usize {
    20_000
}

fn default_max_iterations() -> usize {
    1000
}

fn default_tolerance() -> f64 {
    1e-6
}

impl NoisyConfig {
    pub fn new(instance: InstanceSpec, noise: NoiseModel) -> Self {
        Self {
            instance,
            noise,
            noise_seed: None,
            lambda: LambdaChoice::default(),
            rules: default_rules(),
            pd_iterations: default_pd_iterations(),
            max_iterations: default_max_iterations(),
            tolerance: default_tolerance(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MethodRun {
    pub label: String,
    /// `F(x_k) = λ‖x_k‖₁ + ½‖x_k‖²`.
    pub objective: Vec<f64>,
    /// `‖A x_k − b^δ‖_p − δ`.
    pub feasibility: Vec<f64>,
    /// Iteration index of each trace entry.
    pub ks: Vec<usize>,
    pub x: Vec<f64>,
    pub err_rel: f64,
    pub iterations: usize,
    pub termination: Termination,
    /// The primal-dual reference, which always runs its full budget.
    pub is_reference: bool,
}

#[derive(Debug, Clone)]
pub struct NoisyReport {
    pub resolved: ResolvedInstance,
    pub data: NoisyData,
    pub runs: Vec<MethodRun>,
}

/// Sparse recovery under `‖A x − b^δ‖_p ≤ δ` with BPSFP and the
/// primal-dual reference.
pub fn run_noisy_recovery(config: &NoisyConfig) -> Result<NoisyReport> {
    if config.rules.is_empty() && config.pd_iterations == 0 {
        return Err(Error::InvalidParameter("no methods to compare".into()));
    }
    let resolved = resolve_instance(&config.instance, &config.lambda)?;
    let inst = &resolved.instance;
    let noise_seed = config.noise_seed.unwrap_or(resolved.seed.wrapping_add(1));
    let data = inject_noise(&inst.b, &config.noise, noise_seed)?;
    let lambda = resolved.lambda;
    let x_norm = norm2(&inst.x_dagger);
    let err_rel = |x: &[f64]| dist2(x, &inst.x_dagger) / x_norm;

    let mut runs = Vec::new();
    for rule in &config.rules {
        let ball = RangeSet::norm_ball(data.norm, data.b_delta.clone(), data.delta)?;
        let mut cfg = SolverConfig::new(
            Arc::new(ElasticNet::new(inst.x_dagger.len(), lambda)?),
            vec![Constraint::difficult(inst.op(), ball)],
        );
        cfg.step = *rule;
        let mut solver = Solver::new(cfg)?;
        let (mut objective, mut feasibility, mut ks) = (Vec::new(), Vec::new(), Vec::new());
        let termination = loop {
            let x_value = elastic_net_value(solver.pair().x(), lambda);
            let ax = solver.constraint_image(0).expect("difficult constraint");
            let feas = data.norm.eval(&sub(ax, &data.b_delta)) - data.delta;
            objective.push(x_value);
            feasibility.push(feas);
            ks.push(solver.iteration());
            if feas <= config.tolerance {
                break Termination::Tolerance;
            }
            if solver.iteration() >= config.max_iterations {
                break Termination::MaxIter;
            }
            solver.step()?;
        };
        let x = solver.pair().x().to_vec();
        runs.push(MethodRun {
            label: format!("bpsfp_{}", rule_label(rule)),
            objective,
            feasibility,
            ks,
            err_rel: err_rel(&x),
            iterations: solver.iteration(),
            termination,
            x,
            is_reference: false,
        });
    }

    if config.pd_iterations > 0 {
        let mut pd = PdConfig::new(
            lambda,
            inst.op(),
            data.b_delta.clone(),
            data.delta,
            data.norm,
        );
        pd.max_iterations = config.pd_iterations;
        let res = run_pd(&pd)?;
        runs.push(MethodRun {
            label: "primal_dual".into(),
            objective: res.history.iter().map(|r| r.objective).collect(),
            feasibility: res.history.iter().map(|r| r.feasibility).collect(),
            ks: res.history.iter().map(|r| r.k).collect(),
            err_rel: err_rel(&res.x),
            iterations: res.iterations,
            termination: if res.converged {
                Termination::Tolerance
            } else {
                Termination::MaxIter
            },
            x: res.x,
            is_reference: true,
        });
    }
    Ok(NoisyReport {
        resolved,
        data,
        runs,
    })
}

impl NoisyReport {
    pub fn run(&self, label: &str) -> Option<&MethodRun> {
        self.runs.iter().find(|r| r.label == label)
    }

    pub fn trace_csv(&self) -> String {
        let mut out = String::from("method,k,objective_value,feasibility\n");
        for r in &self.runs {
            for ((k, f), v) in r.ks.iter().zip(&r.objective).zip(&r.feasibility) {
                let _ = writeln!(out, "{},{k},{f},{v}", r.label);
            }
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(
            "method,iterations,termination,objective_value,feasibility,err_rel,lambda,delta\n",
        );
        for r in &self.runs {
            let _ = writeln!(
                out,
                "{},{},{:?},{},{},{},{},{}",
                r.label,
                r.iterations,
                r.termination,
                r.objective.last().copied().unwrap_or(f64::NAN),
                r.feasibility.last().copied().unwrap_or(f64::NAN),
                r.err_rel,
                self.resolved.lambda,
                self.data.delta
            );
        }
        out
    }

    /// Whether every BPSFP run met the feasibility tolerance. The reference
    /// run is not counted.
    pub fn all_converged(&self) -> bool {
        self.runs
            .iter()
            .filter(|r| !r.is_reference)
            .all(|r| r.termination == Termination::Tolerance)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        write_text(&dir.join("traces.csv"), &self.trace_csv())?;
        write_text(&dir.join("summary.csv"), &self.summary_csv())
    }
}
