//! Exact sparse multivariate polynomials, truncated univariate series and
//! Newton diagrams.
//!
//! Coefficients are arbitrary-precision rationals so that the worked
//! examples (which all have rational data) reproduce bit-for-bit. Hot loops
//! evaluate a [`CompiledPoly`] instead.

mod newton;
mod parse;
mod series;

pub use newton::{loja_exponent_convenient, newton_diagram, NewtonDiagram};
pub use parse::parse_poly;
pub use series::{restrict_direction_exact, restrict_line, Coeff, UniSeries};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite float; `None` for NaN or infinities.
pub fn rat_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Sparse polynomial in `nvars` variables with rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exponent: Exponent, c: Rational) -> Self {
        assert_eq!(exponent.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Lowest total degree of a monomial, `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every monomial of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn mul_truncated(&self, other: &Self, max_degree: Option<u32>) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(m) = max_degree {
                    if da + eb.iter().sum::<u32>() > m {
                        continue;
                    }
                }
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * rat_int(e[i] as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| rat_to_f64(c) * monomial_value(e, x))
            .sum())
    }

    pub fn eval_exact(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Composition `p(q_1(y), ..., q_n(y))`. All `q_i` must share one variable
    /// count, which becomes the variable count of the result. With
    /// `max_degree`, products are truncated on the fly (truncated power series
    /// semantics).
    pub fn substitute(&self, q: &[MultiPoly], max_degree: Option<u32>) -> Result<Self> {
        if q.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: q.len(),
            });
        }
        let m = q.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = q.iter().find(|p| p.nvars != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: bad.nvars,
            });
        }
        // powers[i][k] = q_i^k, built lazily up to the largest exponent used
        let mut powers: Vec<Vec<MultiPoly>> = q
            .iter()
            .map(|_| vec![MultiPoly::constant(m, Rational::one())])
            .collect();
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i]
                        .last()
                        .unwrap()
                        .mul_truncated(&q[i], max_degree);
                    powers[i].push(next);
                }
                if k > 0 {
                    term = term.mul_truncated(&powers[i][k as usize], max_degree);
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Sets every variable outside `keep` to zero and renumbers the kept
    /// variables in the order given.
    pub fn restrict_vars(&self, keep: &[usize]) -> Self {
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            let dropped = e
                .iter()
                .enumerate()
                .any(|(i, &k)| k > 0 && !keep.contains(&i));
            if dropped {
                continue;
            }
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c.clone());
        }
        out
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// True when every exponent of variable `i` is even, i.e. the polynomial
    /// is invariant under `x_i -> -x_i`.
    pub fn is_even_in(&self, i: usize) -> bool {
        self.terms.keys().all(|e| e[i] % 2 == 0)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), rat_to_f64(c)))
                .collect(),
        }
    }
}

fn monomial_value(e: &[u32], x: &[f64]) -> f64 {
    e.iter()
        .zip(x)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, &xi)| xi.powi(k as i32))
        .product()
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Canonical text form: `c * x1^e1 * ... * xn^en` terms joined by `+`/`-`,
/// ascending by exponent vector. Parsing it back yields the same polynomial.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join(" * "))?;
            } else {
                write!(f, "{mag} * {}", vars.join(" * "))?;
            }
        }
        Ok(())
    }
}

/// Floating-point snapshot of a [`MultiPoly`] for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    terms: Vec<(Exponent, f64)>,
}

impl CompiledPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Evaluates without a length check; `x` must have `nvars` entries.
    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| c * monomial_value(e, x))
            .sum()
    }
}

/// A polynomial together with its compiled gradient and Hessian.
#[derive(Clone, Debug)]
pub struct SmoothPoly {
    poly: MultiPoly,
    value: CompiledPoly,
    grad: Vec<CompiledPoly>,
    hess: Vec<Vec<CompiledPoly>>,
}

impl SmoothPoly {
    pub fn new(poly: MultiPoly) -> Self {
        let grad_polys = poly.gradient();
        let hess = grad_polys
            .iter()
            .map(|gi| gi.gradient().iter().map(MultiPoly::compile).collect())
            .collect();
        Self {
            value: poly.compile(),
            grad: grad_polys.iter().map(MultiPoly::compile).collect(),
            hess,
            poly,
        }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars
    }

    #[inline]
    pub fn value(&self, x: &[f64]) -> f64 {
        self.value.value(x)
    }

    pub fn gradient(&self, x: &[f64], out: &mut [f64]) {
        for (o, g) in out.iter_mut().zip(&self.grad) {
            *o = g.value(x);
        }
    }

    pub fn hessian(&self, x: &[f64], out: &mut [Vec<f64>]) {
        for (row, hr) in out.iter_mut().zip(&self.hess) {
            for (o, h) in row.iter_mut().zip(hr) {
                *o = h.value(x);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = p("x^2 + y^4", 2);
        assert_eq!(g.eval(&[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(g.eval(&[1.0, 1.0]).unwrap(), 2.0);
        let h = p("x1^6 + x2^4 + x3^2", 3);
        assert_eq!(h.eval(&[1.0, 1.0, 1.0]).unwrap(), 3.0);
    }

    #[test]
    fn eval_dimension_mismatch() {
        let g = p("x^2 + y^4", 2);
        assert!(matches!(
            g.eval(&[1.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn gradient_examples() {
        let g = p("x^2 + y^4", 2);
        assert_eq!(g.gradient(), vec![p("2*x", 2), p("4*y^3", 2)]);
        let c = p("5", 2);
        assert!(c.gradient().iter().all(MultiPoly::is_zero));
        let f2 = p("(x-1)^2 + (y-1)^4 - 2", 2);
        assert_eq!(
            f2.gradient(),
            vec![p("2*x - 2", 2), p("4*(y-1)^3", 2)]
        );
    }

    #[test]
    fn substitute_truncates() {
        // (x + y)^2 with x = t, y = t^2, truncated at degree 3: t^2 + 2t^3
        let q = p("(x + y)^2", 2);
        let t = MultiPoly::var(1, 0);
        let out = q.substitute(&[t.clone(), &t * &t], Some(3)).unwrap();
        assert_eq!(out, p("x^2 + 2*x^3", 1));
    }

    #[test]
    fn restrict_and_parity() {
        let g = p("x1^6 + x2^4 + x3^2 + x1*x3", 3);
        assert_eq!(g.restrict_vars(&[2]), p("x^2", 1));
        assert_eq!(g.restrict_vars(&[0, 1]), p("x1^6 + x2^4", 2));
        assert!(p("x^2 + y^4", 2).is_even_in(0));
        assert!(!g.is_even_in(0));
    }

    #[test]
    fn display_parses_back() {
        let f = p("-3/4*x*y^2 + 7 - y + x^3", 2);
        assert_eq!(p(&f.to_string(), 2), f);
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }
}
