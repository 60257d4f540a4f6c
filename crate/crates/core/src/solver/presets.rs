use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Constraint, SolverConfig, StepRule};
use crate::error::{check_dim, Error, Result};
use crate::linops::{to_dense, LinearOperator};
use crate::objectives::{ElasticNet, Objective, SquaredNorm};
use crate::projections::RangeSet;

/// Classical methods expressed as BPSFP configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// Squared norm, `A x = b` as one difficult constraint, constant steps.
    Landweber,
    /// Like Landweber with dynamic steps.
    MinimalError,
    /// Squared norm, one hyperplane per row.
    Kaczmarz,
    /// Elastic net, `A x = b` as one difficult constraint; exact steps by
    /// default.
    LinearizedBregman,
    /// Elastic net, one hyperplane per row.
    SparseKaczmarz,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Landweber,
        Preset::MinimalError,
        Preset::Kaczmarz,
        Preset::LinearizedBregman,
        Preset::SparseKaczmarz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Landweber => "landweber",
            Preset::MinimalError => "minimal_error",
            Preset::Kaczmarz => "kaczmarz",
            Preset::LinearizedBregman => "linearized_bregman",
            Preset::SparseKaczmarz => "sparse_kaczmarz",
        }
    }

    pub fn needs_lambda(self) -> bool {
        matches!(self, Preset::LinearizedBregman | Preset::SparseKaczmarz)
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s || p.name().replace('_', "-") == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown preset `{s}`")))
    }
}

/// Builds the configuration of a named method for `A x = b`, starting from
/// `x₀* = 0`. The remaining fields keep the defaults of
/// [`SolverConfig::new`].
pub fn preset(
    kind: Preset,
    op: Arc<dyn LinearOperator>,
    b: &[f64],
    lambda: Option<f64>,
) -> Result<SolverConfig> {
    check_dim(op.rows(), b.len())?;
    let n = op.cols();
    let objective: Arc<dyn Objective> = if kind.needs_lambda() {
        let lambda = lambda.ok_or_else(|| Error::MissingLambda(kind.name().into()))?;
        Arc::new(ElasticNet::new(n, lambda)?)
    } else {
        Arc::new(SquaredNorm::new(n))
    };
    let (constraints, step) = match kind {
        Preset::Landweber => (
            vec![Constraint::difficult(op, RangeSet::Point(b.to_vec()))],
            StepRule::Constant,
        ),
        Preset::MinimalError => (
            vec![Constraint::difficult(op, RangeSet::Point(b.to_vec()))],
            StepRule::Dynamic,
        ),
        Preset::LinearizedBregman => (
            vec![Constraint::difficult(op, RangeSet::Point(b.to_vec()))],
            StepRule::Exact,
        ),
        Preset::Kaczmarz | Preset::SparseKaczmarz => {
            (row_hyperplanes(op.as_ref(), b)?, StepRule::Exact)
        }
    };
    let mut config = SolverConfig::new(objective, constraints);
    config.step = step;
    Ok(config)
}

/// One hyperplane `⟨a_i, x⟩ = b_i` per nonzero row.
fn row_hyperplanes(op: &dyn LinearOperator, b: &[f64]) -> Result<Vec<Constraint>> {
    let dense = if op.row(0).is_none() {
        Some(to_dense(op))
    } else {
        None
    };
    let mut out = Vec::with_capacity(op.rows());
    for (i, &bi) in b.iter().enumerate() {
        let row = match &dense {
            Some(d) => d.row_slice(i).to_vec(),
            None => op.row(i).expect("row access"),
        };
        if row.iter().all(|&v| v == 0.0) {
            if bi != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "row {i} is zero but b[{i}] = {bi}"
                )));
            }
            continue;
        }
        out.push(Constraint::simple(RangeSet::hyperplane(row, bi)?));
    }
    Ok(out)
}
