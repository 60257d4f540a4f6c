//! Command-line front end: `bench-stepsizes`, `noisy-recovery`, `tomo` and
//! `solve`. Exit status 0 when every run met its tolerance, 2 when some run
//! hit its iteration cap, 1 on error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiments::{
    run_noisy_recovery, run_solve, run_stepsize_benchmark, run_tomography, Experiment,
    ExperimentConfig, InstanceSpec, NoiseModel, NoisyConfig, StepsizeConfig, TomographyConfig,
};
use crate::solver::Termination;

#[derive(Debug, Parser)]
#[command(
    name = "bpsfp",
    version,
    about = "Bregman projection experiments for split feasibility problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare step-size rules of the linearized Bregman method.
    BenchStepsizes(CommonArgs),
    /// Sparse recovery from noisy data against the primal-dual reference.
    NoisyRecovery(CommonArgs),
    /// Total-variation tomography with three sets of prior constraints.
    Tomo(CommonArgs),
    /// Run one preset on a generated or MatrixMarket system (needs --config).
    Solve(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON experiment config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "max-iter")]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_MAX_ITER: i32 = 2;

/// Config used by a subcommand when no `--config` is given.
pub fn default_config(name: &str) -> Option<ExperimentConfig> {
    let experiment = match name {
        "bench-stepsizes" => {
            Experiment::BenchStepsizes(StepsizeConfig::new(InstanceSpec::gaussian(100, 200, 10, 0)))
        }
        "noisy-recovery" => Experiment::NoisyRecovery(NoisyConfig::new(
            InstanceSpec::gaussian(200, 400, 8, 0),
            NoiseModel::Impulsive { count: 10 },
        )),
        "tomo" => Experiment::Tomo(TomographyConfig::default()),
        _ => return None,
    };
    Some(ExperimentConfig {
        output: None,
        experiment,
    })
}

fn resolve(name: &str, args: &CommonArgs) -> Result<(ExperimentConfig, PathBuf)> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => default_config(name)
            .ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs --config")))?,
    };
    if config.experiment.name() != name {
        return Err(Error::InvalidParameter(format!(
            "config describes `{}`, not `{name}`",
            config.experiment.name()
        )));
    }
    if let Some(seed) = args.seed {
        config.set_seed(seed);
    }
    if let Some(n) = args.max_iter {
        config.set_max_iterations(n);
    }
    if let Some(tol) = args.tol {
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "--tol must be positive, got {tol}"
            )));
        }
        config.set_tolerance(tol);
    }
    let out = args
        .out
        .clone()
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("out").join(name));
    Ok((config, out))
}

/// Runs the experiment and returns whether every run met its tolerance.
fn execute(config: &ExperimentConfig, out: &std::path::Path) -> Result<bool> {
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    std::fs::write(out.join("config.json"), config.to_json()).map_err(|e| Error::io(out, e))?;
    match &config.experiment {
        Experiment::BenchStepsizes(c) => {
            let r = run_stepsize_benchmark(c)?;
            r.write(out)?;
            println!(
                "lambda {} (instance seed {})",
                r.resolved.lambda, r.resolved.seed
            );
            for run in &r.runs {
                println!(
                    "{:<14} {:>7} iterations  {:?}  |x - x_dagger|_inf = {:.3e}",
                    run.label, run.iterations, run.termination, run.error_inf
                );
            }
            Ok(r.all_converged())
        }
        Experiment::NoisyRecovery(c) => {
            let r = run_noisy_recovery(c)?;
            r.write(out)?;
            println!(
                "lambda {}  delta {} ({}-norm)",
                r.resolved.lambda, r.data.delta, r.data.norm
            );
            for run in &r.runs {
                println!(
                    "{:<16} {:>7} iterations  {:?}  F = {:.6}  feasibility = {:.3e}  err_rel = {:.3e}",
                    run.label,
                    run.iterations,
                    run.termination,
                    run.objective.last().copied().unwrap_or(f64::NAN),
                    run.feasibility.last().copied().unwrap_or(f64::NAN),
                    run.err_rel
                );
            }
            Ok(r.all_converged())
        }
        Experiment::Tomo(c) => {
            let r = run_tomography(c)?;
            r.write(out)?;
            println!("mass estimate {}", r.setup.mass);
            for run in &r.runs {
                println!(
                    "{:<9} {:>6} iterations  {:?}  |u - u_dagger|_2 = {:.4}  {:.4} ms/iteration",
                    run.variant.name(),
                    run.iterations,
                    run.termination,
                    run.error,
                    run.ms_per_iteration()
                );
            }
            Ok(r.all_converged())
        }
        Experiment::Solve(c) => {
            let r = run_solve(c)?;
            r.write(out)?;
            let last = r
                .result
                .history
                .iter()
                .rev()
                .find_map(|h| h.max_violation());
            println!(
                "{} iterations  {:?}  max violation {:.3e}",
                r.result.iterations,
                r.result.reason,
                last.unwrap_or(f64::NAN)
            );
            Ok(r.result.reason == Termination::Tolerance)
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let (name, common) = match &cli.command {
        Command::BenchStepsizes(a) => ("bench-stepsizes", a),
        Command::NoisyRecovery(a) => ("noisy-recovery", a),
        Command::Tomo(a) => ("tomo", a),
        Command::Solve(a) => ("solve", a),
    };
    let outcome = resolve(name, common).and_then(|(config, out)| {
        let ok = execute(&config, &out)?;
        println!("results in {}", out.display());
        Ok(ok)
    });
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_MAX_ITER,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
