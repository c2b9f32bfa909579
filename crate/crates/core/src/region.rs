//! Which stratum of `∂A` receives the projection of a plane point, decided
//! through the maps `Ψᵢ(q) = q + fᵢ(q)∇fᵢ(q)`, and the boundaries
//! `Ψᵢ({f₁ = f₂})` between the regions.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::SmoothPoly;
use crate::proj::{psi_inverse, psi_map, SolverOptions, TwoPolySet};
use crate::rates::solve_curve_series;

/// Values of `f₁ − f₂` within this band count as zero.
pub const DEAD_BAND: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    Surface1,
    Surface2,
    Curve,
    Undetermined,
}

impl RegionLabel {
    /// Active set a projection with this label is expected to report.
    pub fn active_set(self) -> Option<Vec<usize>> {
        match self {
            Self::Surface1 => Some(vec![1]),
            Self::Surface2 => Some(vec![2]),
            Self::Curve => Some(vec![1, 2]),
            Self::Undetermined => None,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Surface1 => "surface1",
            Self::Surface2 => "surface2",
            Self::Curve => "curve",
            Self::Undetermined => "undetermined",
        })
    }
}

/// `s₁ = (f₁ − f₂)(Ψ₁⁻¹P)`, `s₂ = (f₂ − f₁)(Ψ₂⁻¹P)`: `s₁ > 0` gives
/// Surface1, `s₂ > 0` Surface2, neither gives Curve.
pub fn classify_point(a: &TwoPolySet, p: &[f64; 2], opts: &SolverOptions) -> RegionLabel {
    let (f1, f2) = (a.f1(), a.f2());
    let (Ok(q1), Ok(q2)) = (psi_inverse(f1, p, opts), psi_inverse(f2, p, opts)) else {
        return RegionLabel::Undetermined;
    };
    let s1 = f1.value(&q1) - f2.value(&q1);
    let s2 = f2.value(&q2) - f1.value(&q2);
    match (s1 > DEAD_BAND, s2 > DEAD_BAND) {
        (true, false) => RegionLabel::Surface1,
        (false, true) => RegionLabel::Surface2,
        (false, false) => RegionLabel::Curve,
        (true, true) => RegionLabel::Undetermined,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    /// Images `Ψ_which(q)` of points `q` on `{f₁ = f₂}`, ordered by the
    /// curve parameter.
    pub points: Vec<[f64; 2]>,
    /// Sample indices where root-finding failed.
    pub skipped: Vec<usize>,
}

impl Polyline {
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,y")?;
        for p in &self.points {
            writeln!(w, "{:.16e},{:.16e}", p[0], p[1])?;
        }
        Ok(())
    }

    /// Euclidean distance from `p` to the polyline.
    pub fn distance(&self, p: &[f64; 2]) -> f64 {
        let seg = |a: &[f64; 2], b: &[f64; 2]| {
            let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
            let len2 = dx * dx + dy * dy;
            let t = if len2 == 0.0 {
                0.0
            } else {
                (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
            };
            let (cx, cy) = (a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
            (cx * cx + cy * cy).sqrt()
        };
        match self.points.len() {
            0 => f64::INFINITY,
            1 => seg(&self.points[0], &self.points[0]),
            _ => self
                .points
                .windows(2)
                .map(|w| seg(&w[0], &w[1]))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

/// Scalar Newton for `D(w) = 0` from `w0`.
fn solve_scalar(mut d: impl FnMut(f64) -> (f64, f64), w0: f64) -> Option<f64> {
    let mut w = w0;
    for _ in 0..60 {
        let (v, dv) = d(w);
        if !v.is_finite() || dv == 0.0 || !dv.is_finite() {
            return None;
        }
        let step = v / dv;
        w -= step;
        if step.abs() <= 1e-15 * w.abs().max(1e-300) {
            return Some(w);
        }
    }
    let (v, _) = d(w);
    (v.abs() <= 1e-13).then_some(w)
}

/// Samples `{f₁ = f₂}` at `n_samples` parameter values in `window` (the
/// parameter is the coordinate along `α`, as in the curve series) and maps
/// them through `Ψ_which`.
pub fn trace_partition_boundary(
    a: &TwoPolySet,
    which: usize,
    window: (f64, f64),
    n_samples: usize,
) -> Result<Polyline> {
    if which != 1 && which != 2 {
        return Err(Error::Precondition(format!("surface index must be 1 or 2, got {which}")));
    }
    let (f1, f2) = (a.f1(), a.f2());
    let cs = solve_curve_series(f1.poly(), f2.poly(), 8)?;
    let param = cs.param;
    let other = 1 - param;
    let guess = cs.phi[other].to_f64();
    let target: &SmoothPoly = if which == 1 { f1 } else { f2 };
    let mut out = Polyline {
        points: Vec::with_capacity(n_samples),
        skipped: Vec::new(),
    };
    let mut g1 = [0.0; 2];
    let mut g2 = [0.0; 2];
    for i in 0..n_samples {
        let s = if n_samples == 1 {
            0.5 * (window.0 + window.1)
        } else {
            window.0 + (window.1 - window.0) * i as f64 / (n_samples - 1) as f64
        };
        let at = |w: f64| {
            let mut q = [0.0; 2];
            q[param] = s;
            q[other] = w;
            q
        };
        let root = solve_scalar(
            |w| {
                let q = at(w);
                f1.gradient(&q, &mut g1);
                f2.gradient(&q, &mut g2);
                (f1.value(&q) - f2.value(&q), g1[other] - g2[other])
            },
            guess.eval(s),
        );
        match root {
            Some(w) => {
                let img = psi_map(target, &at(w))?;
                out.points.push([img[0], img[1]]);
            }
            None => out.skipped.push(i),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    fn coord(range: (f64, f64), n: usize, i: usize) -> f64 {
        if n <= 1 {
            range.0
        } else {
            range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
        }
    }

    pub fn point(&self, i: usize, j: usize) -> [f64; 2] {
        [Self::coord(self.x, self.nx, i), Self::coord(self.y, self.ny, j)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridLabel {
    pub point: [f64; 2],
    pub label: RegionLabel,
}

/// Labels every grid node, row-parallel; output is ordered by `(j, i)`.
pub fn classify_scan(a: &TwoPolySet, grid: &GridSpec, opts: &SolverOptions) -> Vec<GridLabel> {
    (0..grid.ny)
        .into_par_iter()
        .flat_map_iter(|j| {
            (0..grid.nx).map(move |i| {
                let point = grid.point(i, j);
                GridLabel {
                    point,
                    label: classify_point(a, &point, opts),
                }
            })
        })
        .collect()
}

pub fn write_labels_csv<W: Write>(labels: &[GridLabel], mut w: W) -> Result<()> {
    writeln!(w, "x,y,label")?;
    for l in labels {
        writeln!(w, "{:.16e},{:.16e},{}", l.point[0], l.point[1], l.label)?;
    }
    Ok(())
}
