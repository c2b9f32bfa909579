//! Theoretical rate predictions from multiplicities, curve series and
//! Łojasiewicz exponents.

mod bounds;
mod curve;
mod hypersurface;
mod implicit;

pub use bounds::{predict_upper_bound_hyperplane, predict_upper_bound_subspace};
pub use curve::{
    cond2poly_check, predict_curve_rate, solve_curve_series, Cond2Poly, CurveSeries, CurveVerdict,
};
pub use hypersurface::{predict_hypersurface_rate, predict_hypersurface_rate_exact};
pub use implicit::{solve_implicit_series, ImplicitSeries};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{rat_to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateKind {
    Exact,
    UpperBound,
    Linear,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateSource {
    HypersurfaceLine,
    CurveRate,
    HshpBound,
    LojaSubspaceBound,
}

/// Predicted behaviour `‖u_k‖ ~ (L k^λ)^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatePrediction {
    pub kind: RateKind,
    /// Exponent `λ` of `k^{-λ}`; zero for linear convergence.
    pub lambda: Rational,
    /// `L` with `lim L k^λ ‖u_k‖ = 1` (exact rates) or `limsup ≤ 1` (bounds).
    pub limit_constant: Option<f64>,
    pub d: u32,
    pub c0: f64,
    pub source: RateSource,
    /// The constant comes from sampling rather than a closed form.
    pub estimate: bool,
}

impl RatePrediction {
    pub fn lambda_f64(&self) -> f64 {
        rat_to_f64(&self.lambda)
    }

    /// Flat `key = value` block.
    pub fn to_kv(&self) -> String {
        let kind = match self.kind {
            RateKind::Exact => "exact",
            RateKind::UpperBound => "upper_bound",
            RateKind::Linear => "linear",
        };
        let source = match self.source {
            RateSource::HypersurfaceLine => "hypersurface_line",
            RateSource::CurveRate => "curve_rate",
            RateSource::HshpBound => "hyperplane_bound",
            RateSource::LojaSubspaceBound => "subspace_bound",
        };
        let constant = self
            .limit_constant
            .map_or_else(|| "none".to_string(), |c| format!("{c:.16e}"));
        format!(
            "kind = {kind}\nlambda = {}\nlimit_constant = {constant}\nd = {}\nc0 = {:.16e}\nsource = {source}\nestimate = {}\n",
            self.lambda, self.d, self.c0, self.estimate
        )
    }

    pub fn from_kv(text: &str) -> Result<Self> {
        let mut get = std::collections::BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key = value, got {line:?}")))?;
            get.insert(k.trim().to_string(), v.trim().to_string());
        }
        let field = |k: &str| {
            get.get(k)
                .cloned()
                .ok_or_else(|| Error::Config(format!("prediction block lacks {k}")))
        };
        let bad = |k: &str| Error::Config(format!("invalid value for {k}"));
        let kind = match field("kind")?.as_str() {
            "exact" => RateKind::Exact,
            "upper_bound" => RateKind::UpperBound,
            "linear" => RateKind::Linear,
            _ => return Err(bad("kind")),
        };
        let source = match field("source")?.as_str() {
            "hypersurface_line" => RateSource::HypersurfaceLine,
            "curve_rate" => RateSource::CurveRate,
            "hyperplane_bound" => RateSource::HshpBound,
            "subspace_bound" => RateSource::LojaSubspaceBound,
            _ => return Err(bad("source")),
        };
        let lc = field("limit_constant")?;
        let limit_constant = if lc == "none" {
            None
        } else {
            Some(lc.parse().map_err(|_| bad("limit_constant"))?)
        };
        Ok(Self {
            kind,
            lambda: Rational::from_str(&field("lambda")?).map_err(|_| bad("lambda"))?,
            limit_constant,
            d: field("d")?.parse().map_err(|_| bad("d"))?,
            c0: field("c0")?.parse().map_err(|_| bad("c0"))?,
            source,
            estimate: field("estimate")?.parse().map_err(|_| bad("estimate"))?,
        })
    }

    /// Linear convergence (transversal contact).
    pub(crate) fn linear(c0: f64, source: RateSource) -> Self {
        Self {
            kind: RateKind::Linear,
            lambda: Rational::zero(),
            limit_constant: None,
            d: 1,
            c0,
            source,
            estimate: false,
        }
    }
}

impl fmt::Display for RatePrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_kv())
    }
}

/// `λ = 1/(2d − 2)`.
pub(crate) fn rate_exponent(d: u32) -> Rational {
    Rational::new(1.into(), (2 * d as i64 - 2).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn kv_round_trip() {
        let p = RatePrediction {
            kind: RateKind::Exact,
            lambda: rat(1, 6),
            limit_constant: Some(24f64.powf(1.0 / 6.0)),
            d: 4,
            c0: 1.0,
            source: RateSource::HypersurfaceLine,
            estimate: false,
        };
        assert_eq!(RatePrediction::from_kv(&p.to_kv()).unwrap(), p);
        let l = RatePrediction::linear(-4.0, RateSource::HypersurfaceLine);
        assert_eq!(RatePrediction::from_kv(&l.to_kv()).unwrap(), l);
    }
}
