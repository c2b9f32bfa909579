//! Series solutions of `x_i + g_{x_i}(x, y) g(x, y) = 0` near the origin.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{newton_diagram, MultiPoly, UniSeries};

/// `x_i = φ_i(y)` as truncated series in the free variables `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitSeries {
    /// One polynomial per solved variable, over the free variables.
    pub phi: Vec<MultiPoly>,
    pub trunc: u32,
}

impl ImplicitSeries {
    /// Univariate views; only when there is exactly one free variable.
    pub fn univariate(&self) -> Option<Vec<UniSeries<crate::poly::Rational>>> {
        if self.phi.first().map_or(true, |p| p.nvars() != 1) {
            return None;
        }
        Some(
            self.phi
                .iter()
                .map(|p| {
                    let mut c = vec![crate::poly::Rational::zero(); self.trunc as usize + 1];
                    for (e, v) in p.terms() {
                        c[e[0] as usize] = v.clone();
                    }
                    UniSeries::new(c, self.trunc as usize)
                })
                .collect(),
        )
    }

    /// Smallest total degree over all components; `None` if all vanish
    /// through the truncation order.
    pub fn order(&self) -> Option<u32> {
        self.phi.iter().filter_map(MultiPoly::order).min()
    }
}

/// Solves for the first `m` variables of `g` as series in the remaining
/// ones by fixed-point iteration `x ← −∇ₓg · g`, one degree per pass.
pub fn solve_implicit_series(g: &MultiPoly, m: usize, trunc: u32) -> Result<ImplicitSeries> {
    let n = g.nvars();
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!(
            "split must leave both blocks nonempty, got {m} of {n} variables"
        )));
    }
    if !g.constant_term().is_zero() {
        return Err(Error::Precondition("g(0) must vanish".into()));
    }
    let grads: Vec<MultiPoly> = (0..m).map(|i| g.derivative(i)).collect();
    if let Some(i) = grads.iter().position(|d| !d.constant_term().is_zero()) {
        return Err(Error::Precondition(format!(
            "partial derivative in variable {} is nonzero at the origin",
            i + 1
        )));
    }
    let free: Vec<usize> = (m..n).collect();
    let restricted = g.restrict_vars(&free);
    if restricted.is_zero() || !newton_diagram(&restricted)?.convenient {
        return Err(Error::Precondition(
            "the Newton diagram of g(0, y) must meet every axis".into(),
        ));
    }
    let r = n - m;
    let ys: Vec<MultiPoly> = (0..r).map(|i| MultiPoly::var(r, i)).collect();
    let mut phi = vec![MultiPoly::zero(r); m];
    for _ in 0..=trunc {
        let args: Vec<MultiPoly> = phi.iter().cloned().chain(ys.iter().cloned()).collect();
        let gv = g.substitute(&args, Some(trunc))?;
        let next: Vec<MultiPoly> = grads
            .iter()
            .map(|gx| {
                let gxv = gx.substitute(&args, Some(trunc))?;
                Ok(-(&gxv * &gv).truncate(trunc))
            })
            .collect::<Result<_>>()?;
        if next == phi {
            break;
        }
        phi = next;
    }
    Ok(ImplicitSeries { phi, trunc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn symmetric_case_vanishes() {
        let s = solve_implicit_series(&parse_poly("x^2 + y^4", 2).unwrap(), 1, 10).unwrap();
        assert!(s.phi[0].is_zero());
    }

    #[test]
    fn tilted_case_has_high_order() {
        let g = parse_poly("(x - y^2)^2 + y^4", 2).unwrap();
        let s = solve_implicit_series(&g, 1, 12).unwrap();
        // ord g(0, y) = 4
        assert!(s.order().unwrap() >= 5);
        let u = s.univariate().unwrap();
        assert_eq!(u[0].trunc_order(), 12);
    }

    #[test]
    fn rejects_linear_term() {
        let g = parse_poly("x + y^2", 2).unwrap();
        assert!(matches!(
            solve_implicit_series(&g, 1, 6),
            Err(Error::Precondition(_))
        ));
    }
}
