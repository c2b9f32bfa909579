//! Choosing a rate predictor from the shape of `A`, `B` and `u0`.

use std::fmt::Write as _;

use num_traits::Zero;

use super::config::Config;
use crate::error::{Error, Result};
use crate::poly::{rat_from_f64, MultiPoly, Rational};
use crate::proj::{ConvexSet, LinearSubspace, SolverOptions, TwoPolySet};
use crate::rates::{
    cond2poly_check, predict_curve_rate, predict_hypersurface_rate_exact,
    predict_upper_bound_hyperplane, predict_upper_bound_subspace, Cond2Poly, CurveVerdict,
    RatePrediction,
};
use crate::region::{classify_point, RegionLabel};

/// Distance along the line at which the receiving region is sampled.
const CLASSIFY_RADIUS: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq)]
pub struct PredictReport {
    pub prediction: RatePrediction,
    pub cond2poly: Option<Cond2Poly>,
    pub region: Option<RegionLabel>,
    /// How the predictor was chosen.
    pub route: &'static str,
}

impl PredictReport {
    pub fn to_kv(&self) -> String {
        let mut s = format!("route = {}\n", self.route);
        if let Some(c) = &self.cond2poly {
            let verdict = match c.verdict {
                CurveVerdict::ProjectsToCurve => "projects_to_curve",
                CurveVerdict::LeavesCurve => "leaves_curve",
                CurveVerdict::Inconclusive => "inconclusive",
            };
            let _ = writeln!(s, "cond2poly = {verdict}");
            if let Some([l1, l2, mu]) = &c.lambdas {
                let _ = writeln!(s, "cond2poly_lambdas = {l1}, {l2}, {mu}");
            }
        }
        if let Some(r) = self.region {
            let _ = writeln!(s, "region = {r}");
        }
        s + &self.prediction.to_kv()
    }
}

fn exact(v: &[f64]) -> Result<Vec<Rational>> {
    v.iter()
        .map(|&x| rat_from_f64(x).ok_or_else(|| Error::Config(format!("non-finite value {x}"))))
        .collect()
}

/// Direction of the line `B`, oriented towards `u0`.
fn oriented_line(b: &LinearSubspace, span: &[Vec<f64>], u0: &[f64]) -> Vec<f64> {
    let v = span
        .iter()
        .find(|v| v.iter().any(|x| *x != 0.0))
        .cloned()
        .unwrap_or_else(|| b.basis()[0].clone());
    let dot: f64 = v.iter().zip(u0).map(|(a, b)| a * b).sum();
    if dot < 0.0 {
        v.iter().map(|x| -x).collect()
    } else {
        v
    }
}

pub fn predict(cfg: &Config) -> Result<PredictReport> {
    let set = cfg.convex_set()?;
    let b = cfg.subspace()?;
    let span = &cfg.subspace.as_ref().expect("subspace checked").span;
    let u0 = cfg.u0()?;
    let n = set.ambient_dim();
    let horizontal = b.basis().iter().all(|v| v[n - 1].abs() <= 1e-12);
    match &set {
        ConvexSet::Hypograph(a) => {
            let g = a.g().poly();
            if !horizontal {
                return Err(Error::Inconclusive(
                    "subspace is not contained in {z = 0}".into(),
                ));
            }
            if b.dim() == 1 {
                let dir = oriented_line(&b, span, u0);
                return Ok(PredictReport {
                    prediction: predict_hypersurface_rate_exact(g, &exact(&dir[..n - 1])?)?,
                    cond2poly: None,
                    region: None,
                    route: "hypersurface_line",
                });
            }
            if let Some(p) = invariant_axis_rate(g, &b, u0)? {
                return Ok(PredictReport {
                    prediction: p,
                    cond2poly: None,
                    region: None,
                    route: "invariant_axis",
                });
            }
            let prediction = if b.dim() == n - 1 {
                predict_upper_bound_hyperplane(g, cfg.assert.nondegenerate)?
            } else {
                let xs: Vec<Vec<f64>> = b.basis().iter().map(|v| v[..n - 1].to_vec()).collect();
                let b0 = LinearSubspace::span(n - 1, &xs)?;
                predict_upper_bound_subspace(g, &b0, cfg.assert.nondegenerate)?
            };
            Ok(PredictReport {
                prediction,
                cond2poly: None,
                region: None,
                route: "lojasiewicz_bound",
            })
        }
        ConvexSet::TwoPoly(a) => {
            if !horizontal || b.dim() != 1 {
                return Err(Error::Inconclusive(
                    "two-polynomial sets are covered only for lines in {z = 0}".into(),
                ));
            }
            let dir = oriented_line(&b, span, u0);
            two_poly_line(a, &dir, &cfg.solver())
        }
    }
}

/// `u0` on axis `i` with `g` even in every other variable: the reflections
/// `x_j ↦ −x_j` fix `A`, `B` and `u0`, so the iterates never leave the
/// axis and the line rate is exact.
fn invariant_axis_rate(g: &MultiPoly, b: &LinearSubspace, u0: &[f64]) -> Result<Option<RatePrediction>> {
    let m = g.nvars();
    let nz: Vec<usize> = (0..m).filter(|&i| u0[i] != 0.0).collect();
    let [i] = nz[..] else {
        return Ok(None);
    };
    let mut axis = vec![0.0; m + 1];
    axis[i] = 1.0;
    if !b.contains(&axis, 1e-12) || !(0..m).filter(|&j| j != i).all(|j| g.is_even_in(j)) {
        return Ok(None);
    }
    let mut dir = vec![Rational::zero(); m];
    dir[i] = Rational::from_integer(if u0[i] > 0.0 { 1 } else { -1 }.into());
    predict_hypersurface_rate_exact(g, &dir).map(Some)
}

fn two_poly_line(a: &TwoPolySet, dir: &[f64], opts: &SolverOptions) -> Result<PredictReport> {
    let (f1, f2) = (a.f1().poly(), a.f2().poly());
    let d = exact(&dir[..2])?;
    let cond = cond2poly_check(f1, f2, &[d[0].clone(), d[1].clone()])?;
    match cond.verdict {
        CurveVerdict::ProjectsToCurve => Ok(PredictReport {
            prediction: predict_curve_rate(f1, f2)?,
            cond2poly: Some(cond),
            region: None,
            route: "curve",
        }),
        CurveVerdict::Inconclusive => Err(Error::Inconclusive(
            "multipliers on the contact curve vanish to first order".into(),
        )),
        CurveVerdict::LeavesCurve => {
            let len = (dir[0] * dir[0] + dir[1] * dir[1]).sqrt();
            let p = [CLASSIFY_RADIUS * dir[0] / len, CLASSIFY_RADIUS * dir[1] / len];
            let label = classify_point(a, &p, opts);
            let f = match label {
                RegionLabel::Surface1 => f1,
                RegionLabel::Surface2 => f2,
                _ => {
                    return Err(Error::Inconclusive(format!(
                        "line leaves the contact curve but its points are labelled {label}"
                    )))
                }
            };
            let mut prediction = predict_hypersurface_rate_exact(f, &d)?;
            // the closed-form constant assumes a horizontal tangent plane
            let tilted = f.gradient().iter().any(|p| !p.constant_term().is_zero());
            if tilted && prediction.limit_constant.is_some() {
                prediction.limit_constant = None;
            }
            Ok(PredictReport {
                prediction,
                cond2poly: Some(cond),
                region: Some(label),
                route: "receiving_surface",
            })
        }
    }
}
