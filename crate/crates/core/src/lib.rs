//! Bregman projections for split feasibility problems.
//!
//! Find `x` with `x ∈ C_i` for simple convex sets and `A_j x ∈ Q_j` for
//! linear maps, while driving the iterates toward the minimizer of a
//! strongly convex objective (for instance `λ‖x‖₁ + ½‖x‖²` for sparse
//! solutions). Linearized Bregman, Landweber, Kaczmarz and sparse Kaczmarz
//! are presets of [`solver`].

pub mod cli;
pub mod comparator;
pub mod error;
pub mod experiments;
pub mod linesearch;
pub mod linops;
pub mod objectives;
pub mod projections;
pub mod solver;
pub mod vector;

pub use error::{Error, Result};
