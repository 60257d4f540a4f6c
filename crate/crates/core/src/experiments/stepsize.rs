use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::instance::InstanceSpec;
use super::lambda::{resolve_instance, LambdaChoice, ResolvedInstance};
use super::write_text;
use crate::error::{Error, Result};
use crate::solver::{preset, run, Preset, StepRule, Termination};
use crate::vector::{dist_inf, norm2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum BenchObjective {
    /// `λ‖x‖₁ + ½‖x‖²`: the linearized Bregman method.
    #[default]
    ElasticNet,
    /// `½‖x‖²`: Landweber-type iterations, a sanity mode.
    SquaredNorm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepsizeConfig {
    pub instance: InstanceSpec,
    #[serde(default)]
    pub lambda: LambdaChoice,
    #[serde(default = "default_rules")]
    pub rules: Vec<StepRule>,
    #[serde(default)]
    pub objective: BenchObjective,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// Stop once `‖A x − b‖₂ ≤ tolerance·‖b‖₂`.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_rules() -> Vec<StepRule> {
    vec![
        StepRule::Constant,
        StepRule::Dynamic,
        StepRule::Exact,
        StepRule::inexact(2.0),
    ]
}

fn default_max_iterations() -> usize {
    2000
}

fn default_tolerance() -> f64 {
    1e-6
}

impl StepsizeConfig {
    pub fn new(instance: InstanceSpec) -> Self {
        Self {
            instance,
            lambda: LambdaChoice::default(),
            rules: default_rules(),
            objective: BenchObjective::default(),
            max_iterations: default_max_iterations(),
            tolerance: default_tolerance(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RuleRun {
    pub rule: StepRule,
    pub label: String,
    /// `‖A x_k − b‖₂` for `k = 0, 1, …`.
    pub residuals: Vec<f64>,
    pub iterations: usize,
    pub termination: Termination,
    pub x: Vec<f64>,
    /// `‖x − x†‖∞` at the end.
    pub error_inf: f64,
}

#[derive(Debug, Clone)]
pub struct StepsizeReport {
    pub resolved: ResolvedInstance,
    pub runs: Vec<RuleRun>,
}

pub fn rule_label(rule: &StepRule) -> String {
    match rule {
        StepRule::Inexact { c, .. } => format!("inexact_c{c}"),
        other => other.name().to_string(),
    }
}

/// Runs the chosen method on one instance with every step rule.
pub fn run_stepsize_benchmark(config: &StepsizeConfig) -> Result<StepsizeReport> {
    if config.rules.is_empty() {
        return Err(Error::InvalidParameter("no step rules to compare".into()));
    }
    let resolved = match config.objective {
        BenchObjective::ElasticNet => resolve_instance(&config.instance, &config.lambda)?,
        BenchObjective::SquaredNorm => {
            resolve_instance(&config.instance, &LambdaChoice::Fixed(0.0))?
        }
    };
    let inst = &resolved.instance;
    let b_norm = norm2(&inst.b);
    let mut runs = Vec::with_capacity(config.rules.len());
    for rule in &config.rules {
        let mut cfg = match config.objective {
            BenchObjective::ElasticNet => preset(
                Preset::LinearizedBregman,
                inst.op(),
                &inst.b,
                Some(resolved.lambda),
            )?,
            BenchObjective::SquaredNorm => preset(Preset::MinimalError, inst.op(), &inst.b, None)?,
        };
        cfg.step = *rule;
        cfg.max_iterations = config.max_iterations;
        cfg.residual_tolerance = (config.tolerance * b_norm).max(f64::MIN_POSITIVE);
        let result = run(cfg)?;
        let residuals = result
            .history
            .iter()
            .map(|r| r.violations.as_ref().map_or(f64::NAN, |v| v[0]))
            .collect();
        runs.push(RuleRun {
            rule: *rule,
            label: rule_label(rule),
            residuals,
            iterations: result.iterations,
            termination: result.reason,
            error_inf: dist_inf(result.pair.x(), &inst.x_dagger),
            x: result.pair.x().to_vec(),
        });
    }
    Ok(StepsizeReport { resolved, runs })
}

impl StepsizeReport {
    /// `k` followed by one residual column per rule; rules that stopped
    /// early leave their later cells empty.
    pub fn residual_csv(&self) -> String {
        let mut out = String::from("k");
        for r in &self.runs {
            out.push(',');
            out.push_str(&r.label);
        }
        out.push('\n');
        let rows = self
            .runs
            .iter()
            .map(|r| r.residuals.len())
            .max()
            .unwrap_or(0);
        for k in 0..rows {
            out.push_str(&k.to_string());
            for r in &self.runs {
                out.push(',');
                if let Some(v) = r.residuals.get(k) {
                    let _ = write!(out, "{v}");
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out =
            String::from("rule,iterations,termination,final_residual,error_inf,lambda,seed\n");
        for r in &self.runs {
            let _ = writeln!(
                out,
                "{},{},{:?},{},{},{},{}",
                r.label,
                r.iterations,
                r.termination,
                r.residuals.last().copied().unwrap_or(f64::NAN),
                r.error_inf,
                self.resolved.lambda,
                self.resolved.seed
            );
        }
        out
    }

    pub fn all_converged(&self) -> bool {
        self.runs
            .iter()
            .all(|r| r.termination == Termination::Tolerance)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        write_text(&dir.join("residuals.csv"), &self.residual_csv())?;
        write_text(&dir.join("summary.csv"), &self.summary_csv())
    }
}
