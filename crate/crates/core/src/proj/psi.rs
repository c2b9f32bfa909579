//! The plane maps `Ψ(q) = q + f(q)∇f(q)` and their local inverses.

use super::hypograph::solve_single;
use super::SolverOptions;
use crate::error::{Error, Result};
use crate::poly::SmoothPoly;

pub fn psi_map(f: &SmoothPoly, q: &[f64]) -> Result<Vec<f64>> {
    if q.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: q.len(),
        });
    }
    let v = f.value(q);
    let mut grad = vec![0.0; q.len()];
    f.gradient(q, &mut grad);
    Ok(q.iter().zip(&grad).map(|(a, g)| a + g * v).collect())
}

/// Newton on `q + f∇f = target`, meaningful near the origin where `Ψ` is a
/// local diffeomorphism. When `f(0) = 0` the start is the inverse of the
/// linearization `I + ∇f(0)∇f(0)ᵀ` applied to `target`.
pub fn psi_inverse(f: &SmoothPoly, target: &[f64], opts: &SolverOptions) -> Result<Vec<f64>> {
    if target.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: target.len(),
        });
    }
    let n = target.len();
    let zero = vec![0.0; n];
    let mut start = target.to_vec();
    if f.value(&zero) == 0.0 {
        let mut g0 = vec![0.0; n];
        f.gradient(&zero, &mut g0);
        let gg: f64 = g0.iter().map(|v| v * v).sum();
        let gt: f64 = g0.iter().zip(target).map(|(a, b)| a * b).sum();
        for (s, g) in start.iter_mut().zip(&g0) {
            *s -= g * gt / (1.0 + gg);
        }
    }
    solve_single(f, target, &start, 0.0, opts, "psi inverse").map(|(q, _)| q)
}
