//! Damped Newton iteration for small square systems.

use nalgebra::{DMatrix, DVector};

use super::SolverOptions;
use crate::error::{Error, Result};

pub(crate) struct NewtonOutcome {
    pub x: Vec<f64>,
    /// Max-norm of the residual at `x`.
    pub residual: f64,
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, a| m.max(a.abs()))
}

fn two_norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

/// Solves `F(x) = 0` from `x0`; `eval` fills the residual and the row-major
/// Jacobian. Each step backtracks by halving (at most 30 times) until the
/// Euclidean residual decreases. Converges when the max-norm residual is at
/// most `opts.tol`.
pub(crate) fn damped_newton<E>(
    x0: &[f64],
    opts: &SolverOptions,
    what: &'static str,
    mut eval: E,
) -> Result<NewtonOutcome>
where
    E: FnMut(&[f64], &mut [f64], Option<&mut [f64]>),
{
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut f = vec![0.0; n];
    let mut jac = vec![0.0; n * n];
    let mut trial = vec![0.0; n];
    let mut f_trial = vec![0.0; n];
    eval(&x, &mut f, Some(&mut jac));
    let mut res = max_norm(&f);
    // a start that already meets the tolerance (tiny inputs) still gets one
    // full step, which drives the error to rounding level
    let mut polished = false;
    for _ in 0..opts.max_iter {
        let converged = res <= opts.tol;
        if converged && polished {
            break;
        }
        polished |= converged;
        let lu = DMatrix::from_row_slice(n, n, &jac).lu();
        let Some(step) = lu.solve(&DVector::from_column_slice(&f)) else {
            if converged {
                break;
            }
            return Err(Error::SingularSystem(what));
        };
        let base = two_norm(&f);
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=(if converged { 0 } else { 30 }) {
            for i in 0..n {
                trial[i] = x[i] - t * step[i];
            }
            eval(&trial, &mut f_trial, None);
            if f_trial.iter().all(|v| v.is_finite()) && two_norm(&f_trial) < base {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
        x.copy_from_slice(&trial);
        eval(&x, &mut f, Some(&mut jac));
        res = max_norm(&f);
    }
    if res <= opts.tol {
        return Ok(NewtonOutcome { x, residual: res });
    }
    Err(Error::SolverFailure {
        what,
        iterations: opts.max_iter,
        residual: res,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_scalar_cubic() {
        let opts = SolverOptions::default();
        let out = damped_newton(&[3.0], &opts, "cubic", |x, f, j| {
            f[0] = x[0] * x[0] * x[0] - 8.0;
            if let Some(j) = j {
                j[0] = 3.0 * x[0] * x[0];
            }
        })
        .unwrap();
        assert!((out.x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reports_failure() {
        let opts = SolverOptions { tol: 1e-12, max_iter: 5 };
        let err = damped_newton(&[1.0], &opts, "no root", |x, f, j| {
            f[0] = x[0] * x[0] + 1.0;
            if let Some(j) = j {
                j[0] = 2.0 * x[0];
            }
        });
        assert!(matches!(err, Err(Error::SolverFailure { .. }) | Err(Error::SingularSystem(_))));
    }
}
