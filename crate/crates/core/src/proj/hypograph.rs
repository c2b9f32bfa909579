use super::{damped_newton, KKTResult, SolverOptions};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, SmoothPoly};

/// `A = {(x, z) : z ≥ g(x)}` in `ℝⁿ × ℝ`.
#[derive(Clone, Debug)]
pub struct HypographSet {
    g: SmoothPoly,
}

impl HypographSet {
    pub fn new(g: MultiPoly) -> Self {
        Self {
            g: SmoothPoly::new(g),
        }
    }

    pub fn g(&self) -> &SmoothPoly {
        &self.g
    }

    pub fn ambient_dim(&self) -> usize {
        self.g.nvars() + 1
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        let n = self.g.nvars();
        p[n] >= self.g.value(&p[..n]) - tol
    }
}

/// Solves `x + (f(x) − z)∇f(x) = target` by damped Newton from `start`.
///
/// This is the KKT system for projecting `(target, z)` onto `{w ≥ f}` when
/// the constraint is active; with `z = 0` it inverts `Ψ(x) = x + f∇f`.
pub(crate) fn solve_single(
    f: &SmoothPoly,
    target: &[f64],
    start: &[f64],
    z: f64,
    opts: &SolverOptions,
    what: &'static str,
) -> Result<(Vec<f64>, f64)> {
    let n = target.len();
    let mut grad = vec![0.0; n];
    let mut hess = vec![vec![0.0; n]; n];
    let out = damped_newton(start, opts, what, |x, r, jac| {
        let v = f.value(x) - z;
        f.gradient(x, &mut grad);
        for i in 0..n {
            r[i] = x[i] + v * grad[i] - target[i];
        }
        if let Some(jac) = jac {
            f.hessian(x, &mut hess);
            for i in 0..n {
                for j in 0..n {
                    let delta = if i == j { 1.0 } else { 0.0 };
                    jac[i * n + j] = delta + grad[i] * grad[j] + v * hess[i][j];
                }
            }
        }
    })?;
    Ok((out.x, out.residual))
}

pub fn project_hypograph(a: &HypographSet, p: &[f64], opts: &SolverOptions) -> Result<KKTResult> {
    let n = a.g.nvars();
    if p.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: p.len(),
        });
    }
    let (x_part, z) = (&p[..n], p[n]);
    if z >= a.g.value(x_part) {
        return Ok(KKTResult {
            point: p.to_vec(),
            multipliers: vec![0.0],
            active: Vec::new(),
            residual: 0.0,
            ambiguous: false,
        });
    }
    let (x, residual) = solve_single(&a.g, x_part, x_part, z, opts, "hypograph projection")?;
    let gz = a.g.value(&x);
    let mut point = x;
    point.push(gz);
    Ok(KKTResult {
        point,
        multipliers: vec![gz - z],
        active: vec![1],
        residual,
        ambiguous: false,
    })
}
