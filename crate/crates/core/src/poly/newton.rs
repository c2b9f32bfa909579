//! Newton diagrams and the Łojasiewicz exponent of convenient polynomials.

use num_traits::{One, Signed, Zero};

use super::{Exponent, MultiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonDiagram {
    pub support: Vec<Exponent>,
    /// Vertices of the compact faces of `Γ₊`, sorted lexicographically.
    pub vertices: Vec<Exponent>,
    /// Smallest pure power of each variable present in the support.
    pub axis_exponents: Vec<Option<u32>>,
    pub convenient: bool,
}

pub fn newton_diagram(p: &MultiPoly) -> Result<NewtonDiagram> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.nvars();
    let support: Vec<Exponent> = p.support().cloned().collect();

    let mut axis_exponents = vec![None; n];
    for e in &support {
        let nz: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        if let [i] = nz[..] {
            let cur: &mut Option<u32> = &mut axis_exponents[i];
            *cur = Some(cur.map_or(e[i], |c| c.min(e[i])));
        }
    }
    let convenient = axis_exponents.iter().all(Option::is_some);

    let mut vertices: Vec<Exponent> = support
        .iter()
        .enumerate()
        .filter(|(j, e)| {
            // any other point below e componentwise rules it out cheaply
            let dominated = support
                .iter()
                .enumerate()
                .any(|(i, o)| i != *j && o.iter().zip(e.iter()).all(|(a, b)| a <= b));
            if dominated {
                return false;
            }
            let others: Vec<&Exponent> = support
                .iter()
                .enumerate()
                .filter(|(i, _)| i != j)
                .map(|(_, o)| o)
                .collect();
            !in_lower_hull(&others, e)
        })
        .map(|(_, e)| e.clone())
        .collect();
    vertices.sort();

    Ok(NewtonDiagram {
        support,
        vertices,
        axis_exponents,
        convenient,
    })
}

/// `L(p)` as the largest axis exponent; valid for convenient nondegenerate
/// `p`, the latter being the caller's responsibility.
pub fn loja_exponent_convenient(p: &MultiPoly) -> Result<Rational> {
    let nd = newton_diagram(p)?;
    let mut best = 0u32;
    for (axis, d) in nd.axis_exponents.iter().enumerate() {
        match d {
            Some(d) => best = best.max(*d),
            None => return Err(Error::NotConvenient { axis }),
        }
    }
    Ok(Rational::from_integer(best.into()))
}

/// Whether `target ∈ conv(points) + ℝⁿ₊`, decided exactly.
///
/// Feasibility of `Σ λ_j s_j + σ = target, Σ λ_j = 1, λ, σ ≥ 0` by a
/// Phase-I simplex with Bland's rule. The slacks `σ` start basic (the target
/// is nonnegative); one artificial variable covers the convexity row.
fn in_lower_hull(points: &[&Exponent], target: &Exponent) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = target.len();
    let m = points.len();
    // columns: λ_0..λ_{m-1}, σ_0..σ_{n-1}, artificial, rhs
    let cols = m + n + 2;
    let art = m + n;
    let rhs = m + n + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = vec![Rational::zero(); cols];
        for (j, s) in points.iter().enumerate() {
            row[j] = Rational::from_integer(s[i].into());
        }
        row[m + i] = Rational::one();
        row[rhs] = Rational::from_integer(target[i].into());
        t.push(row);
    }
    let mut conv = vec![Rational::zero(); cols];
    for c in conv.iter_mut().take(m) {
        *c = Rational::one();
    }
    conv[art] = Rational::one();
    conv[rhs] = Rational::one();
    t.push(conv);
    let mut basis: Vec<usize> = (0..n).map(|i| m + i).chain([art]).collect();

    // objective: minimize the artificial; reduced costs w.r.t. the basis
    let mut obj = vec![Rational::zero(); cols];
    for (c, v) in obj.iter_mut().zip(&t[n]) {
        *c = -v.clone();
    }
    obj[art] = Rational::zero();

    loop {
        // Bland: smallest entering index with negative reduced cost
        let Some(enter) = (0..art).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, lv)) => ratio < *lv || (ratio == *lv && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            break;
        };
        let piv = t[pr][enter].clone();
        for v in t[pr].iter_mut() {
            *v = &*v / &piv;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        let f = obj[enter].clone();
        for (v, pv) in obj.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
        basis[pr] = enter;
    }
    // optimum of the artificial is -obj[rhs]
    obj[rhs].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat_int};

    #[test]
    fn three_variable_example() {
        let f = parse_poly("x1^6 + x2^4 + x3^2", 3).unwrap();
        let nd = newton_diagram(&f).unwrap();
        assert_eq!(nd.axis_exponents, vec![Some(6), Some(4), Some(2)]);
        assert!(nd.convenient);
        assert_eq!(nd.vertices.len(), 3);
        assert_eq!(loja_exponent_convenient(&f).unwrap(), rat_int(6));
    }

    #[test]
    fn planar_examples() {
        let g = parse_poly("x^2 + y^4", 2).unwrap();
        assert_eq!(newton_diagram(&g).unwrap().axis_exponents, vec![Some(2), Some(4)]);
        assert_eq!(loja_exponent_convenient(&g).unwrap(), rat_int(4));
        let q = parse_poly("x^2 + y^2", 2).unwrap();
        assert_eq!(loja_exponent_convenient(&q).unwrap(), rat_int(2));
    }

    #[test]
    fn non_convenient() {
        let p = parse_poly("x*y", 2).unwrap();
        let nd = newton_diagram(&p).unwrap();
        assert!(!nd.convenient);
        assert!(matches!(
            loja_exponent_convenient(&p),
            Err(Error::NotConvenient { axis: 0 })
        ));
    }

    #[test]
    fn interior_points_are_not_vertices() {
        // x^2 y^2 and x y^3 lie on the segment from x^4 to y^4; x^3 y^3 above it
        let p = parse_poly("x^4 + y^4 + x^2*y^2 + x^3*y^3 + x*y^3", 2).unwrap();
        let nd = newton_diagram(&p).unwrap();
        assert_eq!(nd.vertices, vec![vec![0, 4], vec![4, 0]]);
        let q = parse_poly("x^4 + y^4 + x*y", 2).unwrap();
        assert_eq!(newton_diagram(&q).unwrap().vertices, vec![vec![0, 4], vec![1, 1], vec![4, 0]]);
    }

    #[test]
    fn zero_polynomial() {
        assert!(matches!(
            newton_diagram(&MultiPoly::zero(2)),
            Err(Error::ZeroPolynomial)
        ));
    }
}
