//! Euclidean projections onto the convex sets `A` and linear subspaces `B`.
//!
//! Every projection onto `A` solves its KKT system by damped Newton and
//! reports the active constraints, multipliers and final residual.

mod check;
mod hypograph;
mod newton;
mod psi;
mod subspace;
mod twopoly;

pub use check::spot_check_convexity;
pub use hypograph::{project_hypograph, HypographSet};
pub use psi::{psi_inverse, psi_map};
pub use subspace::{project_subspace, LinearSubspace};
pub use twopoly::{project_twopoly, TwoPolySet};

pub(crate) use newton::damped_newton;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Bound on the max-norm of the KKT residual.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 100,
        }
    }
}

/// Output of a projection onto `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct KKTResult {
    pub point: Vec<f64>,
    /// One multiplier per constraint, zero for inactive ones.
    pub multipliers: Vec<f64>,
    /// 1-based indices of the active constraints, ascending.
    pub active: Vec<usize>,
    pub residual: f64,
    /// More than one active set produced a valid candidate.
    pub ambiguous: bool,
}

/// A set `A` onto which the alternating projection method projects.
#[derive(Clone, Debug)]
pub enum ConvexSet {
    Hypograph(HypographSet),
    TwoPoly(TwoPolySet),
}

impl ConvexSet {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Self::Hypograph(a) => a.ambient_dim(),
            Self::TwoPoly(_) => 3,
        }
    }

    pub fn project(&self, p: &[f64], opts: &SolverOptions) -> Result<KKTResult> {
        match self {
            Self::Hypograph(a) => project_hypograph(a, p, opts),
            Self::TwoPoly(a) => project_twopoly(a, p, opts),
        }
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        match self {
            Self::Hypograph(a) => a.contains(p, tol),
            Self::TwoPoly(a) => a.contains(p, tol),
        }
    }
}
