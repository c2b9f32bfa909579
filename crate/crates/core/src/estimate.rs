//! Empirical rates from traces: log-log fits, limit products and linear
//! ratio detection.

use crate::apm::{Termination, Trace};
use crate::error::{Error, Result};
use crate::rates::RatePrediction;

/// Records with `‖u_k‖` at or below this are excluded from fits.
pub const FIT_FLOOR: f64 = 1e-13;
pub const MIN_FIT_POINTS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct RateEstimate {
    /// `λ̂` in `‖u_k‖ ≈ Ĉ k^{−λ̂}`.
    pub fitted_exponent: f64,
    pub fitted_constant: f64,
    pub r_squared: f64,
    pub tail_window: (usize, usize),
    /// `L k^λ ‖u_k‖` at the last record, when a prediction is supplied.
    pub product_at_end: Option<f64>,
    pub linear_ratio: Option<f64>,
}

impl RateEstimate {
    pub fn to_kv(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "none".into(), |x| format!("{x:.16e}"));
        format!(
            "fitted_exponent = {:.16e}\nfitted_constant = {:.16e}\nr_squared = {:.16e}\nk_min = {}\nk_max = {}\nproduct_at_end = {}\nlinear_ratio = {}\n",
            self.fitted_exponent,
            self.fitted_constant,
            self.r_squared,
            self.tail_window.0,
            self.tail_window.1,
            opt(self.product_at_end),
            opt(self.linear_ratio)
        )
    }
}

/// Least squares of `log ‖u_k‖` on `log k` over `k ∈ [k_lo, k_hi]`.
pub fn fit_rate_range(t: &Trace, k_lo: usize, k_hi: usize) -> Result<RateEstimate> {
    let pts: Vec<(f64, f64, usize)> = t
        .records
        .iter()
        .filter(|r| r.k >= k_lo.max(1) && r.k <= k_hi && r.norm_u > FIT_FLOOR)
        .map(|r| ((r.k as f64).ln(), r.norm_u.ln(), r.k))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            got: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: 1,
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(RateEstimate {
        fitted_exponent: -slope,
        fitted_constant: intercept.exp(),
        r_squared,
        tail_window: (pts[0].2, pts[pts.len() - 1].2),
        product_at_end: None,
        linear_ratio: detect_linear(t),
    })
}

/// Fit over the last `tail_fraction` of the records measured in `log k`.
pub fn fit_rate(t: &Trace, tail_fraction: f64) -> Result<RateEstimate> {
    let k_max = t.last().map_or(0, |r| r.k);
    if k_max < 1 {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            got: 0,
        });
    }
    let f = tail_fraction.clamp(0.0, 1.0);
    let k_lo = ((k_max as f64).ln() * (1.0 - f)).exp().ceil() as usize;
    fit_rate_range(t, k_lo, k_max)
}

/// `L k^λ ‖u_k‖` at every record with `k ≥ 1`.
pub fn check_limit_product(t: &Trace, pred: &RatePrediction) -> Result<Vec<(usize, f64)>> {
    let l = pred.limit_constant.ok_or(Error::MissingConstant)?;
    let lambda = pred.lambda_f64();
    Ok(t
        .records
        .iter()
        .filter(|r| r.k >= 1)
        .map(|r| (r.k, l * (r.k as f64).powf(lambda) * r.norm_u))
        .collect())
}

/// Limiting ratio `‖u_{k+1}‖/‖u_k‖` when the decay is geometric.
///
/// Uses per-step ratios between successive records above `1e-12`, over the
/// later half of them. Needs 20 ratios, or 5 when the run stopped at the
/// noise floor (fast linear runs leave few points).
pub fn detect_linear(t: &Trace) -> Option<f64> {
    let recs: Vec<_> = t.records.iter().filter(|r| r.norm_u > 1e-12).collect();
    let ratios: Vec<f64> = recs
        .windows(2)
        .map(|w| (w[1].norm_u / w[0].norm_u).powf(1.0 / (w[1].k - w[0].k) as f64))
        .collect();
    let needed = if t.terminated == Termination::BelowFloor {
        5
    } else {
        MIN_FIT_POINTS
    };
    if ratios.len() < needed {
        return None;
    }
    let tail = &ratios[ratios.len() / 2..];
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    ((hi - lo) / mean < 1e-2 && mean < 0.999).then_some(mean)
}

/// Fit plus, when the prediction carries a constant, the final product.
pub fn estimate_against(
    t: &Trace,
    tail_fraction: f64,
    pred: Option<&RatePrediction>,
) -> Result<RateEstimate> {
    let mut est = fit_rate(t, tail_fraction)?;
    if let Some(p) = pred {
        if p.limit_constant.is_some() {
            est.product_at_end = check_limit_product(t, p)?.last().map(|x| x.1);
        }
    }
    Ok(est)
}
