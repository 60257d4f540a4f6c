use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::instance::{generate_instance, InstanceSpec};
use super::write_text;
use crate::error::{Error, Result};
use crate::linops::{LinearOperator, SparseMatrix};
use crate::solver::{history_csv, preset, run, ControlSequence, Preset, SolverResult, StepRule};

/// Where the system `A x = b` comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum ProblemSource {
    Generated(InstanceSpec),
    /// A MatrixMarket coordinate file and the right-hand side, given
    /// inline or as a file with one number per line.
    MatrixMarket {
        path: PathBuf,
        #[serde(default)]
        rhs: Option<Vec<f64>>,
        #[serde(default)]
        rhs_path: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub problem: ProblemSource,
    pub preset: Preset,
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Overrides the preset's step rule.
    #[serde(default)]
    pub step: Option<StepRule>,
    #[serde(default = "default_control")]
    pub control: ControlSequence,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    /// Bound on every constraint violation.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_control() -> ControlSequence {
    ControlSequence::Cyclic
}
fn default_max_iterations() -> usize {
    10_000
}
fn default_tolerance() -> f64 {
    1e-6
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub result: SolverResult,
    /// Known solution, for generated problems.
    pub x_dagger: Option<Vec<f64>>,
}

fn read_vector(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.split_whitespace()
        .map(|t| {
            t.parse::<f64>().map_err(|e| Error::Parse {
                context: path.display().to_string(),
                message: format!("`{t}`: {e}"),
            })
        })
        .collect()
}

pub fn run_solve(config: &SolveConfig) -> Result<SolveReport> {
    let (op, b, x_dagger): (Arc<dyn LinearOperator>, Vec<f64>, Option<Vec<f64>>) =
        match &config.problem {
            ProblemSource::Generated(spec) => {
                let inst = generate_instance(spec)?;
                (inst.op(), inst.b, Some(inst.x_dagger))
            }
            ProblemSource::MatrixMarket {
                path,
                rhs,
                rhs_path,
            } => {
                let a = SparseMatrix::read_matrix_market(path)?;
                let b = match (rhs, rhs_path) {
                    (Some(v), None) => v.clone(),
                    (None, Some(p)) => read_vector(p)?,
                    _ => {
                        return Err(Error::InvalidParameter(
                            "give exactly one of `rhs` and `rhs_path`".into(),
                        ))
                    }
                };
                (Arc::new(a), b, None)
            }
        };
    let mut cfg = preset(config.preset, op, &b, config.lambda)?;
    if let Some(step) = config.step {
        cfg.step = step;
    }
    cfg.control = config.control.clone();
    cfg.max_iterations = config.max_iterations;
    cfg.residual_tolerance = config.tolerance;
    Ok(SolveReport {
        result: run(cfg)?,
        x_dagger,
    })
}

impl SolveReport {
    pub fn solution_csv(&self) -> String {
        let mut out = String::from("index,x");
        if self.x_dagger.is_some() {
            out.push_str(",x_dagger");
        }
        out.push('\n');
        for (i, v) in self.result.pair.x().iter().enumerate() {
            let _ = write!(out, "{i},{v}");
            if let Some(xd) = &self.x_dagger {
                let _ = write!(out, ",{}", xd[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        write_text(&dir.join("history.csv"), &history_csv(&self.result.history))?;
        write_text(&dir.join("solution.csv"), &self.solution_csv())
    }
}
