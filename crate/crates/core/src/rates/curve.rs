//! The ridge curve `C = {z = f₁ = f₂}` as a power series, the projection
//! sign test along a tangent line, and the resulting exact rate.

use num_traits::{One, Signed, Zero};

use super::{rate_exponent, RateKind, RatePrediction, RateSource};
use crate::error::{Error, Result};
use crate::poly::{rat_to_f64, MultiPoly, Rational, UniSeries};

/// `φ(s) = α s + β s² + O(s³)` parametrizing `C` near the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSeries {
    pub phi: [UniSeries<Rational>; 3],
    pub alpha: [Rational; 3],
    pub beta: [Rational; 3],
    /// Coordinate used as the parameter: 0 for x, 1 for y.
    pub param: usize,
}

fn to_series(p: &MultiPoly, trunc: usize) -> UniSeries<Rational> {
    let mut coeffs = vec![Rational::zero(); trunc + 1];
    for (e, c) in p.terms() {
        let k = e[0] as usize;
        if k <= trunc {
            coeffs[k] = c.clone();
        }
    }
    UniSeries::new(coeffs, trunc)
}

fn grad_at_origin(f: &MultiPoly) -> [Rational; 2] {
    [f.coeff(&[1, 0]), f.coeff(&[0, 1])]
}

fn check_pair(f1: &MultiPoly, f2: &MultiPoly) -> Result<()> {
    for f in [f1, f2] {
        if f.nvars() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: f.nvars(),
            });
        }
        if !f.constant_term().is_zero() {
            return Err(Error::Precondition(
                "both polynomials must vanish at the origin".into(),
            ));
        }
    }
    Ok(())
}

/// Solves `f₁ = f₂` for one plane coordinate as a series in the other and
/// lifts to `z = f₁`, through degree `trunc`.
///
/// The parameter is `y` whenever `α₂ ≠ 0` (so `α = (α₁, 1, 0)`), else `x`.
pub fn solve_curve_series(f1: &MultiPoly, f2: &MultiPoly, trunc: usize) -> Result<CurveSeries> {
    check_pair(f1, f2)?;
    let [f1x, f1y] = grad_at_origin(f1);
    let [f2x, f2y] = grad_at_origin(f2);
    let dx = &f1x - &f2x;
    let dy = &f1y - &f2y;
    if dx.is_zero() && dy.is_zero() {
        return Err(Error::KernelDegenerate);
    }
    if !(&f1x * &f2y - &f1y * &f2x).is_zero() {
        return Err(Error::Precondition(
            "the curve is not tangent to the xy-plane at the origin".into(),
        ));
    }
    let (param, pivot, alpha) = if !dx.is_zero() {
        (1, dx.clone(), [-&dy / &dx, Rational::one(), Rational::zero()])
    } else {
        (0, dy.clone(), [Rational::one(), -&dx / &dy, Rational::zero()])
    };
    let other = 1 - param;
    let diff = f1 - f2;
    let s = MultiPoly::var(1, 0);
    let t = Some(trunc as u32);
    let args = |w: &MultiPoly| -> Vec<MultiPoly> {
        if param == 1 {
            vec![w.clone(), s.clone()]
        } else {
            vec![s.clone(), w.clone()]
        }
    };
    // w ← w − D(w(s), s)/D_w(0); each pass fixes one more degree
    let mut w = s.scale(&alpha[other]);
    let inv = Rational::one() / &pivot;
    for _ in 0..=trunc {
        let r = diff.substitute(&args(&w), t)?;
        if r.is_zero() {
            break;
        }
        w = &w - &r.scale(&inv);
    }
    if !diff.substitute(&args(&w), t)?.is_zero() {
        return Err(Error::SingularSystem("curve series degree step"));
    }
    let z = f1.substitute(&args(&w), t)?;
    let w_series = to_series(&w, trunc);
    let s_series = to_series(&s, trunc);
    let phi = if param == 1 {
        [w_series, s_series, to_series(&z, trunc)]
    } else {
        [s_series, w_series, to_series(&z, trunc)]
    };
    let second = |p: &UniSeries<Rational>| p.coeff(2).cloned().unwrap_or_else(Rational::zero);
    let beta = [second(&phi[0]), second(&phi[1]), second(&phi[2])];
    Ok(CurveSeries {
        phi,
        alpha,
        beta,
        param,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveVerdict {
    ProjectsToCurve,
    LeavesCurve,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cond2Poly {
    pub verdict: CurveVerdict,
    /// `(λ₁, λ₂, μ)` with `β = λ₁ n₁ + λ₂ n₂ + μ (a, b, 0)`, where
    /// `nᵢ = (−f_{ix}(0), −f_{iy}(0), 1)`; absent when `(a, b)` is not
    /// tangent to `C`.
    pub lambdas: Option<[Rational; 3]>,
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Whether points of the line through `(a, b, 0)` project onto `C`.
pub fn cond2poly_check(f1: &MultiPoly, f2: &MultiPoly, dir: &[Rational; 2]) -> Result<Cond2Poly> {
    let cs = solve_curve_series(f1, f2, 4)?;
    let [f1x, f1y] = grad_at_origin(f1);
    let [f2x, f2y] = grad_at_origin(f2);
    let [a, b] = dir.clone();
    // columns n₁, n₂, (a, b, 0)
    let m = [
        [-&f1x, -&f2x, a.clone()],
        [-&f1y, -&f2y, b.clone()],
        [Rational::one(), Rational::one(), Rational::zero()],
    ];
    let det = det3(&m);
    if det.is_zero() {
        return Err(Error::SingularSystem(
            "direction and constraint normals are linearly dependent",
        ));
    }
    if !(&a * &cs.alpha[1] - &b * &cs.alpha[0]).is_zero() {
        return Ok(Cond2Poly {
            verdict: CurveVerdict::LeavesCurve,
            lambdas: None,
        });
    }
    let solve_col = |j: usize| {
        let mut mj = m.clone();
        for (row, bi) in mj.iter_mut().zip(&cs.beta) {
            row[j] = bi.clone();
        }
        det3(&mj) / &det
    };
    let lambdas = [solve_col(0), solve_col(1), solve_col(2)];
    let prod = rat_to_f64(&(&lambdas[0] * &lambdas[1]));
    let verdict = if prod.abs() <= 1e-10 {
        CurveVerdict::Inconclusive
    } else if lambdas[0].is_positive() && lambdas[1].is_positive() {
        CurveVerdict::ProjectsToCurve
    } else if prod < 0.0 {
        CurveVerdict::LeavesCurve
    } else {
        CurveVerdict::Inconclusive
    };
    Ok(Cond2Poly {
        verdict,
        lambdas: Some(lambdas),
    })
}

/// Exact rate along the tangent line of `C`, assuming the projections land
/// on `C`: with `(α₂φ₁ − α₁φ₂)² + |α|²φ₃² = |α|² c₀² s^{2d} + …`,
/// `L = ((2d−2) d c₀² / |α|^{2d})^{1/(2d−2)}`.
pub fn predict_curve_rate(f1: &MultiPoly, f2: &MultiPoly) -> Result<RatePrediction> {
    let deg = f1.degree().max(f2.degree()) as usize;
    let cs = solve_curve_series(f1, f2, 2 * deg + 4)?;
    let [a1, a2, _] = &cs.alpha;
    let norm2 = a1 * a1 + a2 * a2;
    let lateral = cs.phi[0].scale(a2).sub(&cs.phi[1].scale(a1));
    let sum = lateral
        .mul(&lateral)
        .add(&cs.phi[2].mul(&cs.phi[2]).scale(&norm2));
    let (m, c) = sum.lowest_term()?;
    if m % 2 != 0 {
        return Err(Error::SeriesDomain(format!(
            "squared distance series has odd lowest degree {m}"
        )));
    }
    let d = (m / 2) as u32;
    let c0_sq = &c / &norm2;
    let c0 = rat_to_f64(&c0_sq).sqrt();
    if d == 1 {
        return Ok(RatePrediction::linear(c0, RateSource::CurveRate));
    }
    let q = 2 * d - 2;
    let base = Rational::from_integer((q * d).into()) * c0_sq / num_traits::pow(norm2, d as usize);
    Ok(RatePrediction {
        kind: RateKind::Exact,
        lambda: rate_exponent(d),
        limit_constant: Some(rat_to_f64(&base).powf(1.0 / q as f64)),
        d,
        c0,
        source: RateSource::CurveRate,
        estimate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, rat_int};
    use approx::assert_relative_eq;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, 2).unwrap()
    }

    const F_QUARTIC: &str = "x^2 + y^4";
    const F_SHIFT_DOWN: &str = "(x - 1)^2 + (y - 1)^4 - 2";
    const F_SHIFT_UP: &str = "(x + 1/2)^2 + (y + 1/2)^4 - 5/16";

    #[test]
    fn first_pair_series() {
        let cs = solve_curve_series(&p(F_QUARTIC), &p(F_SHIFT_DOWN), 8).unwrap();
        assert_eq!(cs.param, 1);
        assert_eq!(cs.alpha, [rat_int(-2), rat_int(1), rat_int(0)]);
        assert_eq!(cs.beta, [rat_int(3), rat_int(0), rat_int(4)]);
        let x: Vec<Rational> = [0, -2, 3, -2, 0, 0, 0, 0, 0].map(rat_int).to_vec();
        assert_eq!(cs.phi[0].coeffs(), &x[..]);
        let z: Vec<Rational> = [0, 0, 4, -12, 18, -12, 4, 0, 0].map(rat_int).to_vec();
        assert_eq!(cs.phi[2].coeffs(), &z[..]);
    }

    #[test]
    fn second_pair_series() {
        let cs = solve_curve_series(&p(F_QUARTIC), &p(F_SHIFT_UP), 6).unwrap();
        assert_eq!(cs.alpha, [rat(-1, 2), rat_int(1), rat_int(0)]);
        assert_eq!(cs.beta, [rat(-3, 2), rat_int(0), rat(1, 4)]);
        assert_eq!(cs.phi[0].coeff(3), Some(&rat_int(-2)));
        assert_eq!(cs.phi[2].coeff(3), Some(&rat(3, 2)));
    }

    #[test]
    fn identical_pair_is_degenerate() {
        assert!(matches!(
            solve_curve_series(&p(F_QUARTIC), &p(F_QUARTIC), 6),
            Err(Error::KernelDegenerate)
        ));
    }

    #[test]
    fn sign_test_examples() {
        let r = cond2poly_check(&p(F_QUARTIC), &p(F_SHIFT_DOWN), &[rat_int(-2), rat_int(1)]).unwrap();
        assert_eq!(r.verdict, CurveVerdict::ProjectsToCurve);
        assert_eq!(r.lambdas.unwrap(), [rat(37, 10), rat(3, 10), rat(-6, 5)]);

        let r = cond2poly_check(&p(F_QUARTIC), &p(F_SHIFT_UP), &[rat_int(1), rat_int(-2)]).unwrap();
        assert_eq!(r.verdict, CurveVerdict::LeavesCurve);
        assert_eq!(r.lambdas.unwrap(), [rat(-19, 20), rat(6, 5), rat(-3, 10)]);

        let r = cond2poly_check(&p(F_QUARTIC), &p(F_SHIFT_DOWN), &[rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(r.verdict, CurveVerdict::LeavesCurve);
        assert!(r.lambdas.is_none());
    }

    #[test]
    fn curve_rate_first_pair() {
        let pred = predict_curve_rate(&p(F_QUARTIC), &p(F_SHIFT_DOWN)).unwrap();
        assert_eq!((pred.kind, pred.d), (RateKind::Exact, 2));
        assert_relative_eq!(pred.c0, (89.0f64 / 5.0).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            pred.limit_constant.unwrap(),
            (356.0f64 / 125.0).sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn straight_ridge_in_the_plane() {
        assert!(matches!(
            predict_curve_rate(&p("y^2"), &p("y^2 + y")),
            Err(Error::ZeroSeries { .. })
        ));
    }
}
