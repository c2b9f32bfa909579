use num_traits::Zero;

use super::{rate_exponent, RateKind, RatePrediction, RateSource};
use crate::error::{Error, Result};
use crate::poly::{rat_from_f64, rat_to_f64, restrict_direction_exact, MultiPoly, Rational};

/// Rate along the line `B = span{(a, 0)}` against `A = {z ≥ g(x)}`.
///
/// With `g(t a/‖a‖) = c₀ t^d + O(t^{d+1})`: linear when `d = 1`, otherwise
/// exact with `λ = 1/(2d−2)` and `L = ((2d−2) d c₀²)^{1/(2d−2)}`.
pub fn predict_hypersurface_rate(g: &MultiPoly, a: &[f64]) -> Result<RatePrediction> {
    let exact: Vec<Rational> = a
        .iter()
        .map(|&v| rat_from_f64(v).ok_or(Error::ZeroDirection))
        .collect::<Result<_>>()?;
    predict_hypersurface_rate_exact(g, &exact)
}

/// As [`predict_hypersurface_rate`] for a rational direction; `c₀²` and
/// `L^{2d−2}` are formed exactly before the final root.
pub fn predict_hypersurface_rate_exact(g: &MultiPoly, a: &[Rational]) -> Result<RatePrediction> {
    let norm2: Rational = a.iter().map(|v| v * v).fold(Rational::zero(), |s, v| s + v);
    if norm2.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let raw = restrict_direction_exact(g, a)?;
    let (d, c) = raw.lowest_term()?;
    let d = d as u32;
    if d == 0 {
        return Err(Error::Precondition(
            "restriction does not vanish at the origin".into(),
        ));
    }
    let norm = rat_to_f64(&norm2).sqrt();
    let c0 = rat_to_f64(&c) / norm.powi(d as i32);
    if d == 1 {
        return Ok(RatePrediction::linear(c0, RateSource::HypersurfaceLine));
    }
    let c0_sq = &c * &c / num_traits::pow(norm2, d as usize);
    let q = 2 * d - 2;
    let base = Rational::from_integer((q * d).into()) * c0_sq;
    Ok(RatePrediction {
        kind: RateKind::Exact,
        lambda: rate_exponent(d),
        limit_constant: Some(rat_to_f64(&base).powf(1.0 / q as f64)),
        d,
        c0,
        source: RateSource::HypersurfaceLine,
        estimate: false,
    })
}
