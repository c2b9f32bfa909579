//! Truncated univariate power series.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_from_f64, rat_to_f64, MultiPoly, Rational};
use crate::error::{Error, Result};

/// Scalar ring usable as a series coefficient.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// `c_0 + c_1 t + ... + c_T t^T + O(t^{T+1})`.
///
/// Coefficients above the truncation order are unknown; no operation ever
/// reports one.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<T> {
    coeffs: Vec<T>,
    trunc: usize,
}

impl<T: Coeff> UniSeries<T> {
    /// Builds a series known through `trunc`; missing coefficients are zero,
    /// extra ones are dropped.
    pub fn new(mut coeffs: Vec<T>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, T::zero());
        Self { coeffs, trunc }
    }

    /// A polynomial viewed as a series truncated at its length minus one.
    pub fn from_poly(coeffs: Vec<T>) -> Self {
        let trunc = coeffs.len().saturating_sub(1);
        Self::new(coeffs, trunc)
    }

    pub fn zero(trunc: usize) -> Self {
        Self::new(Vec::new(), trunc)
    }

    pub fn monomial(degree: usize, c: T, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if degree <= trunc {
            s.coeffs[degree] = c;
        }
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; `None` above the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicity and leading coefficient.
    pub fn lowest_term(&self) -> Result<(usize, T)> {
        match self.valuation() {
            Some(d) => Ok((d, self.coeffs[d].clone())),
            None => Err(Error::ZeroSeries { trunc: self.trunc }),
        }
    }

    fn val_or_past(&self) -> usize {
        self.valuation().unwrap_or(self.trunc + 1)
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        Self::new(self.coeffs.clone(), trunc.min(self.trunc))
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let coeffs = (0..=trunc)
            .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
            .collect();
        Self { coeffs, trunc }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().cloned().map(|c| -c).collect(),
            trunc: self.trunc,
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|v| v.clone() * c.clone()).collect(),
            trunc: self.trunc,
        }
    }

    /// Product, known through `min(T_a + v_b, T_b + v_a)` where `v` is the
    /// valuation.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc + other.val_or_past()).min(other.trunc + self.val_or_past());
        let mut coeffs = vec![T::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i > trunc {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > trunc {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs, trunc }
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::monomial(0, T::one(), self.trunc);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self(inner(t))`. The inner series must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesDomain(
                "inner series of a composition must vanish at 0".into(),
            ));
        }
        let v = inner.val_or_past();
        let trunc = ((self.trunc + 1) * v - 1).min(inner.trunc);
        // Horner: c_0 + s (c_1 + s (c_2 + ...))
        let mut acc = Self::zero(trunc);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).truncate(trunc);
            acc = Self::new(acc.coeffs, trunc);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(Self::new(acc.coeffs, trunc))
    }

    pub fn derivative(&self) -> Self {
        if self.trunc == 0 {
            return Self::zero(0);
        }
        let mut coeffs = Vec::with_capacity(self.trunc);
        let mut k = T::zero();
        for c in self.coeffs.iter().skip(1) {
            k = k + T::one();
            coeffs.push(c.clone() * k.clone());
        }
        Self::new(coeffs, self.trunc - 1)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UniSeries<U> {
        UniSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            trunc: self.trunc,
        }
    }
}

impl UniSeries<Rational> {
    pub fn to_f64(&self) -> UniSeries<f64> {
        self.map(rat_to_f64)
    }
}

impl UniSeries<f64> {
    /// Horner evaluation of the known part.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Square root of a series whose lowest term is `c t^{2m}` with `c > 0`.
    ///
    /// The result is `sqrt(c) t^m (1 + r)^{1/2}`, known through `T - m`.
    pub fn sqrt_even(&self) -> Result<Self> {
        let (lead_deg, lead) = self.lowest_term()?;
        if lead_deg % 2 != 0 {
            return Err(Error::SeriesDomain(format!(
                "square root of a series with odd lowest degree {lead_deg}"
            )));
        }
        if lead <= 0.0 {
            return Err(Error::SeriesDomain(format!(
                "square root of a series with leading coefficient {lead}"
            )));
        }
        let m = lead_deg / 2;
        let n = self.trunc - lead_deg;
        // a = self / (lead t^{2m}) = 1 + a_1 t + ...
        let a: Vec<f64> = (0..=n).map(|k| self.coeffs[lead_deg + k] / lead).collect();
        let mut b = vec![0.0; n + 1];
        b[0] = 1.0;
        for k in 1..=n {
            let cross: f64 = (1..k).map(|j| b[j] * b[k - j]).sum();
            b[k] = (a[k] - cross) / 2.0;
        }
        let root = lead.sqrt();
        let mut coeffs = vec![0.0; m];
        coeffs.extend(b.iter().map(|v| v * root));
        Ok(Self::new(coeffs, self.trunc - m))
    }
}

/// Exact coefficients of `t -> p(t a)` (no normalization of `a`).
pub fn restrict_direction_exact(p: &MultiPoly, a: &[Rational]) -> Result<UniSeries<Rational>> {
    if a.len() != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            got: a.len(),
        });
    }
    let deg = p.degree() as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (e, c) in p.terms() {
        let mut m = c.clone();
        for (ai, &k) in a.iter().zip(e) {
            if k > 0 {
                m *= num_traits::pow(ai.clone(), k as usize);
            }
        }
        let k: u32 = e.iter().sum();
        coeffs[k as usize] += m;
    }
    Ok(UniSeries::new(coeffs, deg))
}

/// Coefficients of `t -> p(t a / |a|)`, truncated at `deg p`.
///
/// The unnormalized restriction is formed exactly from the (binary-exact)
/// rational value of `a`; only the division by `|a|^k` happens in floating
/// point.
pub fn restrict_line(p: &MultiPoly, a: &[f64]) -> Result<UniSeries<f64>> {
    if a.len() != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars(),
            got: a.len(),
        });
    }
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroDirection);
    }
    let exact: Vec<Rational> = a
        .iter()
        .map(|&v| rat_from_f64(v).ok_or(Error::ZeroDirection))
        .collect::<Result<_>>()?;
    let raw = restrict_direction_exact(p, &exact)?;
    let mut scale = 1.0;
    let coeffs = raw
        .coeffs()
        .iter()
        .map(|c| {
            let v = rat_to_f64(c) / scale;
            scale *= norm;
            v
        })
        .collect();
    Ok(UniSeries::new(coeffs, raw.trunc_order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, rat_int};
    use approx::assert_relative_eq;

    fn s(c: &[f64], t: usize) -> UniSeries<f64> {
        UniSeries::new(c.to_vec(), t)
    }

    #[test]
    fn restrict_basic_example() {
        let g = parse_poly("x^2 + y^4", 2).unwrap();
        let (a, b) = (3.0, 4.0);
        let r = restrict_line(&g, &[a, b]).unwrap();
        assert_eq!(r.trunc_order(), 4);
        assert_relative_eq!(r.coeffs()[2], a * a / (a * a + b * b), max_relative = 1e-15);
        assert_relative_eq!(
            r.coeffs()[4],
            b.powi(4) / (a * a + b * b).powi(2),
            max_relative = 1e-15
        );
        assert_eq!(r.coeffs()[1], 0.0);
        assert_eq!(r.coeffs()[3], 0.0);

        let axis = restrict_line(&g, &[0.0, 1.0]).unwrap();
        assert_eq!(axis.coeffs(), &[0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn restrict_shifted_example_exact_then_normalized() {
        let f1 = parse_poly("(x + 1/2)^2 + (y + 1/2)^4 - 5/16", 2).unwrap();
        let raw = restrict_direction_exact(&f1, &[rat_int(1), rat_int(-2)]).unwrap();
        assert_eq!(
            raw.coeffs(),
            &[rat_int(0), rat_int(0), rat_int(7), rat_int(-16), rat_int(16)]
        );
        let n = restrict_line(&f1, &[1.0, -2.0]).unwrap();
        let r5 = 5f64.sqrt();
        assert_relative_eq!(n.coeffs()[2], 7.0 / 5.0, max_relative = 1e-15);
        assert_relative_eq!(n.coeffs()[3], -16.0 / r5.powi(3), max_relative = 1e-15);
        assert_relative_eq!(n.coeffs()[4], 16.0 / 25.0, max_relative = 1e-15);
    }

    #[test]
    fn restrict_zero_direction() {
        let g = parse_poly("x^2 + y^4", 2).unwrap();
        assert!(matches!(restrict_line(&g, &[0.0, 0.0]), Err(Error::ZeroDirection)));
    }

    #[test]
    fn lowest_term_examples() {
        let g = parse_poly("x^2 + y^4", 2).unwrap();
        let (d, c0) = restrict_line(&g, &[3.0, 4.0]).unwrap().lowest_term().unwrap();
        assert_eq!(d, 2);
        assert_relative_eq!(c0, 9.0 / 25.0, max_relative = 1e-15);
        let (d, c0) = s(&[0., 0., 0., 0., 1.], 4).lowest_term().unwrap();
        assert_eq!((d, c0), (4, 1.0));
        assert!(matches!(
            s(&[0.0; 3], 2).lowest_term(),
            Err(Error::ZeroSeries { trunc: 2 })
        ));
    }

    #[test]
    fn arithmetic_examples() {
        let t2 = s(&[0., 0., 1.], 6);
        let t3 = s(&[0., 0., 0., 1.], 6);
        let p = t2.mul(&t3);
        assert_eq!(p.lowest_term().unwrap(), (5, 1.0));
        // (t^2 + O(t^7)) (t^3 + O(t^7)) = t^5 + O(t^9)
        assert_eq!(p.trunc_order(), 8);

        let root = s(&[0., 0., 0., 0., 4., 4.], 5).sqrt_even().unwrap();
        assert_eq!(root.trunc_order(), 3);
        assert_eq!(root.coeffs(), &[0., 0., 2., 1.]);

        let outer = UniSeries::from_poly(vec![1.0, 1.0]);
        let inner = s(&[0., 0., 1.], 2);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c.coeffs(), &[1., 0., 1.]);
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let outer = UniSeries::from_poly(vec![1.0, 1.0]);
        assert!(outer.compose(&s(&[1., 1.], 3)).is_err());
    }

    #[test]
    fn sqrt_domain_errors() {
        assert!(matches!(
            s(&[0., 0., 0., 1., 1.], 4).sqrt_even(),
            Err(Error::SeriesDomain(_))
        ));
        assert!(matches!(
            s(&[0., 0., -1., 1.], 4).sqrt_even(),
            Err(Error::SeriesDomain(_))
        ));
    }

    #[test]
    fn exact_arithmetic() {
        let a = UniSeries::new(vec![rat(0, 1), rat(1, 2), rat(1, 3)], 4);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(2), Some(&rat(1, 4)));
        assert_eq!(sq.coeff(3), Some(&rat(1, 3)));
        assert_eq!(sq.coeff(4), Some(&rat(1, 9)));
        assert_eq!(a.derivative().coeffs()[1], rat(2, 3));
    }
}
