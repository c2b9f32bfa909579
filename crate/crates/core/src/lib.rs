//! Alternating projections between semialgebraic convex sets and linear
//! subspaces: simulation, exact sublinear rate prediction, and verification.

pub mod error;
pub mod poly;
pub mod proj;
pub mod rates;
pub mod region;
pub mod apm;
pub mod estimate;
pub mod cli;

pub use error::{Error, Result};
