use super::hypograph::solve_single;
use super::{damped_newton, KKTResult, SolverOptions};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, SmoothPoly};

/// `A = {(x, y, z) : z ≥ f₁(x, y), z ≥ f₂(x, y)}`.
#[derive(Clone, Debug)]
pub struct TwoPolySet {
    f1: SmoothPoly,
    f2: SmoothPoly,
}

impl TwoPolySet {
    pub fn new(f1: MultiPoly, f2: MultiPoly) -> Result<Self> {
        for f in [&f1, &f2] {
            if f.nvars() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    got: f.nvars(),
                });
            }
        }
        Ok(Self {
            f1: SmoothPoly::new(f1),
            f2: SmoothPoly::new(f2),
        })
    }

    pub fn f1(&self) -> &SmoothPoly {
        &self.f1
    }

    pub fn f2(&self) -> &SmoothPoly {
        &self.f2
    }

    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        let q = &p[..2];
        p[2] >= self.f1.value(q) - tol && p[2] >= self.f2.value(q) - tol
    }
}

struct Candidate {
    point: Vec<f64>,
    multipliers: Vec<f64>,
    active: Vec<usize>,
    residual: f64,
    /// Largest infeasibility or negative multiplier.
    violation: f64,
}

fn single_candidate(
    a: &TwoPolySet,
    which: usize,
    p: &[f64],
    opts: &SolverOptions,
) -> Result<Candidate> {
    let (f, other) = if which == 1 { (&a.f1, &a.f2) } else { (&a.f2, &a.f1) };
    let (q, residual) = solve_single(f, &p[..2], &p[..2], p[2], opts, "single-surface projection")?;
    let z = f.value(&q);
    let slack = z - other.value(&q);
    let c = z - p[2];
    let mut multipliers = vec![0.0; 2];
    multipliers[which - 1] = c;
    Ok(Candidate {
        point: vec![q[0], q[1], z],
        multipliers,
        active: vec![which],
        residual,
        violation: (-slack).max(-c).max(0.0),
    })
}

fn curve_candidate(a: &TwoPolySet, p: &[f64], opts: &SolverOptions) -> Result<Candidate> {
    let (big_x, big_y, big_z) = (p[0], p[1], p[2]);
    let c0 = (a.f1.value(&p[..2]).max(a.f2.value(&p[..2])) - big_z) / 2.0;
    let mut g1 = [0.0; 2];
    let mut g2 = [0.0; 2];
    let mut h1 = vec![vec![0.0; 2]; 2];
    let mut h2 = vec![vec![0.0; 2]; 2];
    let out = damped_newton(&[big_x, big_y, c0, c0], opts, "curve projection", |v, r, jac| {
        let q = &v[..2];
        let (c1, c2) = (v[2], v[3]);
        let (v1, v2) = (a.f1.value(q), a.f2.value(q));
        a.f1.gradient(q, &mut g1);
        a.f2.gradient(q, &mut g2);
        r[0] = q[0] - big_x + c1 * g1[0] + c2 * g2[0];
        r[1] = q[1] - big_y + c1 * g1[1] + c2 * g2[1];
        r[2] = v1 - big_z - c1 - c2;
        r[3] = v1 - v2;
        if let Some(j) = jac {
            a.f1.hessian(q, &mut h1);
            a.f2.hessian(q, &mut h2);
            let rows = [
                [
                    1.0 + c1 * h1[0][0] + c2 * h2[0][0],
                    c1 * h1[0][1] + c2 * h2[0][1],
                    g1[0],
                    g2[0],
                ],
                [
                    c1 * h1[1][0] + c2 * h2[1][0],
                    1.0 + c1 * h1[1][1] + c2 * h2[1][1],
                    g1[1],
                    g2[1],
                ],
                [g1[0], g1[1], -1.0, -1.0],
                [g1[0] - g2[0], g1[1] - g2[1], 0.0, 0.0],
            ];
            for (i, row) in rows.iter().enumerate() {
                j[4 * i..4 * i + 4].copy_from_slice(row);
            }
        }
    })?;
    let q = &out.x[..2];
    Ok(Candidate {
        point: vec![q[0], q[1], a.f1.value(q)],
        multipliers: vec![out.x[2], out.x[3]],
        active: vec![1, 2],
        residual: out.residual,
        violation: (-out.x[2]).max(-out.x[3]).max(0.0),
    })
}

/// Enumerates the active sets `{1}`, `{2}`, `{1,2}` and keeps the valid
/// candidate (feasible, nonnegative multipliers); ties go to the smallest
/// violation, then the smallest residual. Slack tolerances are
/// `1e3·tol·min(1, ‖p‖)`.
pub fn project_twopoly(a: &TwoPolySet, p: &[f64], opts: &SolverOptions) -> Result<KKTResult> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: p.len(),
        });
    }
    let q = &p[..2];
    if p[2] >= a.f1.value(q) && p[2] >= a.f2.value(q) {
        return Ok(KKTResult {
            point: p.to_vec(),
            multipliers: vec![0.0, 0.0],
            active: Vec::new(),
            residual: 0.0,
            ambiguous: false,
        });
    }
    // sign and feasibility slack scale with the input near the origin
    let scale = p.iter().map(|v| v * v).sum::<f64>().sqrt().min(1.0);
    let feas_tol = 1e3 * opts.tol * scale;
    let mut valid: Vec<Candidate> = Vec::new();
    let mut best_invalid = f64::INFINITY;
    let attempts = [
        single_candidate(a, 1, p, opts),
        single_candidate(a, 2, p, opts),
        curve_candidate(a, p, opts),
    ];
    for cand in attempts.into_iter().flatten() {
        if cand.violation <= feas_tol {
            valid.push(cand);
        } else {
            best_invalid = best_invalid.min(cand.violation);
        }
    }
    let ambiguous = valid.len() > 1;
    let best = valid
        .into_iter()
        .min_by(|x, y| {
            x.violation
                .total_cmp(&y.violation)
                .then(x.residual.total_cmp(&y.residual))
        })
        .ok_or(Error::NoProjectionCandidate {
            residual: best_invalid,
        })?;
    Ok(KKTResult {
        point: best.point,
        multipliers: best.multipliers,
        active: best.active,
        residual: best.residual,
        ambiguous,
    })
}
