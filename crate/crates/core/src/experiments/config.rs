use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::noisy::NoisyConfig;
use super::solve::{ProblemSource, SolveConfig};
use super::stepsize::StepsizeConfig;
use super::tomo::TomographyConfig;
use crate::error::{Error, Result};

/// One experiment, as read from a JSON document such as
/// `{"experiment": "tomo", "output": "out/tomo", "size": 32}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(flatten)]
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum Experiment {
    BenchStepsizes(StepsizeConfig),
    NoisyRecovery(NoisyConfig),
    Tomo(TomographyConfig),
    Solve(SolveConfig),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::BenchStepsizes(_) => "bench-stepsizes",
            Experiment::NoisyRecovery(_) => "noisy-recovery",
            Experiment::Tomo(_) => "tomo",
            Experiment::Solve(_) => "solve",
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            context: "experiment config".into(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse {
            context: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn set_seed(&mut self, seed: u64) {
        match &mut self.experiment {
            Experiment::BenchStepsizes(c) => c.instance.seed = seed,
            Experiment::NoisyRecovery(c) => c.instance.seed = seed,
            Experiment::Tomo(c) => c.seed = seed,
            Experiment::Solve(c) => {
                if let ProblemSource::Generated(spec) = &mut c.problem {
                    spec.seed = seed;
                }
            }
        }
    }

    pub fn set_max_iterations(&mut self, n: usize) {
        match &mut self.experiment {
            Experiment::BenchStepsizes(c) => c.max_iterations = n,
            Experiment::NoisyRecovery(c) => c.max_iterations = n,
            Experiment::Tomo(c) => c.max_iterations = n,
            Experiment::Solve(c) => c.max_iterations = n,
        }
    }

    /// Sets the stopping tolerance; for tomography both the data and the
    /// gradient target.
    pub fn set_tolerance(&mut self, tol: f64) {
        match &mut self.experiment {
            Experiment::BenchStepsizes(c) => c.tolerance = tol,
            Experiment::NoisyRecovery(c) => c.tolerance = tol,
            Experiment::Tomo(c) => {
                c.data_tolerance = tol;
                c.grad_tolerance = tol;
            }
            Experiment::Solve(c) => c.tolerance = tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::InstanceSpec;

    #[test]
    fn round_trip_and_defaults() {
        let cfg = ExperimentConfig::from_json(r#"{"experiment": "tomo", "size": 16}"#).unwrap();
        let Experiment::Tomo(t) = &cfg.experiment else {
            panic!()
        };
        assert_eq!((t.size, t.angles, t.max_iterations), (16, 12, 3000));
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);

        let bench = ExperimentConfig {
            output: Some("out".into()),
            experiment: Experiment::BenchStepsizes(StepsizeConfig::new(InstanceSpec::gaussian(
                10, 20, 2, 1,
            ))),
        };
        assert_eq!(
            ExperimentConfig::from_json(&bench.to_json()).unwrap(),
            bench
        );
    }

    #[test]
    fn unknown_experiment_is_a_parse_error() {
        assert!(matches!(
            ExperimentConfig::from_json(r#"{"experiment": "nope"}"#),
            Err(Error::Parse { .. })
        ));
    }
}
