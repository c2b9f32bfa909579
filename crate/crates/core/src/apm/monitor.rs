//! Per-step inequalities checked on recorded traces.

use nalgebra::{DMatrix, DVector};

use super::Trace;
use crate::poly::UniSeries;
use crate::rates::RatePrediction;

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FejerReport {
    /// Steps `k` where `‖a_{k+1}‖² + d(a_k, B)² > ‖a_k‖² + 1e-10`.
    pub violations: Vec<usize>,
    pub max_excess: f64,
    pub checked: usize,
}

pub fn fejer_check(t: &Trace) -> FejerReport {
    let mut rep = FejerReport {
        max_excess: f64::NEG_INFINITY,
        ..Default::default()
    };
    for (r0, r1) in t.consecutive() {
        let excess = norm2(&r1.a) + r0.dist_a_to_b * r0.dist_a_to_b - norm2(&r0.a);
        rep.max_excess = rep.max_excess.max(excess);
        rep.checked += 1;
        if excess > 1e-10 {
            rep.violations.push(r0.k);
        }
    }
    if rep.checked == 0 {
        rep.max_excess = 0.0;
    }
    rep
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StepResidualReport {
    /// `(k, ρ_k / ‖u_{k+1}‖^{2d})` over the tail, signed.
    pub ratios: Vec<(usize, f64)>,
    /// Largest `|ratio|` in the earlier and later halves of the tail (by log k).
    pub head_max: f64,
    pub tail_max: f64,
    /// Median signed ratio; the leading coefficient of the remainder series.
    pub median_ratio: f64,
    pub bounded: bool,
}

/// Residual of `‖u_k‖ = ‖u_{k+1}‖ + d c₀² ‖u_{k+1}‖^{2d−1} + O(‖u_{k+1}‖^{2d})`
/// scaled by `‖u_{k+1}‖^{2d}`, over steps with `k ≥ √k_max`.
///
/// Bounded means the later half never exceeds twice the earlier half, after
/// discounting rounding noise of relative size `1e-14` in the norms.
pub fn step_residual_check(t: &Trace, pred: &RatePrediction) -> StepResidualReport {
    let d = pred.d as i32;
    let dc2 = pred.d as f64 * pred.c0 * pred.c0;
    let k_max = t.last().map_or(0, |r| r.k).max(1) as f64;
    let k_lo = k_max.sqrt();
    let mid = k_max.powf(0.75);
    let mut rep = StepResidualReport {
        bounded: true,
        ..Default::default()
    };
    let mut head = Vec::new();
    let mut tail = Vec::new();
    for (r0, r1) in t.consecutive() {
        if (r0.k as f64) < k_lo || r1.norm_u == 0.0 {
            continue;
        }
        let (u0, u1) = (r0.norm_u, r1.norm_u);
        let rho = u0 - u1 - dc2 * u1.powi(2 * d - 1);
        let scale = u1.powi(2 * d);
        let ratio = rho / scale;
        let noise = 1e-14 * u0 / scale;
        rep.ratios.push((r0.k, ratio));
        if (r0.k as f64) < mid {
            head.push(ratio.abs());
        } else {
            tail.push((ratio.abs() - noise).max(0.0));
        }
    }
    rep.head_max = head.iter().copied().fold(0.0, f64::max);
    rep.tail_max = tail.iter().copied().fold(0.0, f64::max);
    rep.bounded = rep.tail_max <= 2.0 * rep.head_max + 1e-12;
    let mut signed: Vec<f64> = rep.ratios.iter().map(|r| r.1).collect();
    signed.sort_by(f64::total_cmp);
    rep.median_ratio = signed.get(signed.len() / 2).copied().unwrap_or(0.0);
    rep
}

/// Least-squares polynomial `h` of the given degree with
/// `ρ_k / ‖u_{k+1}‖^{2d} ≈ h(‖u_{k+1}‖)` over all consecutive records.
pub fn fit_residual_series(t: &Trace, pred: &RatePrediction, degree: usize) -> Option<UniSeries<f64>> {
    let d = pred.d as i32;
    let dc2 = pred.d as f64 * pred.c0 * pred.c0;
    let rows: Vec<(f64, f64)> = t
        .consecutive()
        .filter(|(_, r1)| r1.norm_u > 0.0)
        .map(|(r0, r1)| {
            let u1 = r1.norm_u;
            (u1, (r0.norm_u - u1 - dc2 * u1.powi(2 * d - 1)) / u1.powi(2 * d))
        })
        .collect();
    if rows.len() <= degree {
        return None;
    }
    let a = DMatrix::from_fn(rows.len(), degree + 1, |i, j| rows[i].0.powi(j as i32));
    let b = DVector::from_iterator(rows.len(), rows.iter().map(|r| r.1));
    let h = a.svd(true, true).solve(&b, 1e-14).ok()?;
    Some(UniSeries::from_poly(h.iter().copied().collect()))
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct X2y4Report {
    /// Steps `k` with `0 < |x_k| < y_k² ≤ ε` but not `0 < |x_{k+1}| < y_{k+1}²`.
    pub violations: Vec<usize>,
    /// First recorded step with `|x_k| < y_k²`.
    pub first_entry: Option<usize>,
    pub checked: usize,
}

/// Monitors the region `|x| < y²` for coordinates `ix`, `iy` of the iterates.
pub fn x2y4_monitor(t: &Trace, ix: usize, iy: usize, eps: f64) -> X2y4Report {
    let mut rep = X2y4Report::default();
    let inside = |u: &[f64]| {
        let (x, y) = (u[ix].abs(), u[iy] * u[iy]);
        0.0 < x && x < y
    };
    rep.first_entry = t.records.iter().find(|r| inside(&r.u)).map(|r| r.k);
    for (r0, r1) in t.consecutive() {
        let y2 = r0.u[iy] * r0.u[iy];
        if inside(&r0.u) && y2 <= eps {
            rep.checked += 1;
            if !inside(&r1.u) {
                rep.violations.push(r0.k);
            }
        }
    }
    rep
}
