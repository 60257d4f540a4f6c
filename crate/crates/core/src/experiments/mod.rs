//! Experiment harness: test instances, noise, `λ` certification, the
//! step-size, noisy-recovery and tomography studies, and their CSV/PGM
//! output.

mod certify;
mod config;
mod instance;
mod lambda;
mod noise;
mod noisy;
mod pgm;
mod phantom;
mod solve;
mod stepsize;
mod tomo;

use std::path::Path;

pub use certify::{certification_tolerance, certify_lambda, Certificate, CERTIFY_ITERATIONS};
pub use config::{Experiment, ExperimentConfig};
pub use instance::{generate_instance, Amplitude, Instance, InstanceSpec, MatrixKind};
pub use lambda::{resolve_instance, LambdaChoice, ResolvedInstance};
pub use noise::{inject_noise, NoiseModel, NoisyData};
pub use noisy::{run_noisy_recovery, MethodRun, NoisyConfig, NoisyReport};
pub use pgm::{pgm_bytes, write_pgm};
pub use phantom::{Ellipse, Phantom};
pub use solve::{run_solve, ProblemSource, SolveConfig, SolveReport};
pub use stepsize::{
    rule_label, run_stepsize_benchmark, BenchObjective, RuleRun, StepsizeConfig, StepsizeReport,
};
pub use tomo::{
    run_tomography, tomography_problem, tomography_setup, PhantomKind, TomoVariant,
    TomographyConfig, TomographyReport, TomographySetup, VariantRun,
};

use crate::error::{Error, Result};

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
