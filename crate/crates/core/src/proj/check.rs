//! Sampled evidence for the caller's convexity and positivity assertions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::SmoothPoly;

fn sample_ball(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if v.iter().map(|a| a * a).sum::<f64>() <= 1.0 {
            return v;
        }
    }
}

/// Samples the unit ball: each polynomial must be midpoint convex and, when
/// `positive` is set, `max_i f_i(x) > 0` for `x ≠ 0`.
pub fn spot_check_convexity(
    polys: &[&SmoothPoly],
    positive: bool,
    samples: usize,
    seed: u64,
) -> Result<()> {
    let Some(n) = polys.first().map(|p| p.nvars()) else {
        return Ok(());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = sample_ball(&mut rng, n);
        let b = sample_ball(&mut rng, n);
        let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
        for (i, f) in polys.iter().enumerate() {
            let (fa, fb, fm) = (f.value(&a), f.value(&b), f.value(&mid));
            let slack = 1e-12 * (1.0 + fa.abs() + fb.abs());
            if fm > 0.5 * (fa + fb) + slack {
                return Err(Error::AssertionViolated(format!(
                    "polynomial {} fails midpoint convexity between {a:?} and {b:?}",
                    i + 1
                )));
            }
        }
        if positive && a.iter().any(|v| *v != 0.0) {
            let top = polys.iter().map(|f| f.value(&a)).fold(f64::NEG_INFINITY, f64::max);
            if top <= 0.0 {
                return Err(Error::AssertionViolated(format!(
                    "defining polynomial is not positive at {a:?}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn sp(s: &str) -> SmoothPoly {
        SmoothPoly::new(parse_poly(s, 2).unwrap())
    }

    #[test]
    fn accepts_convex_positive() {
        assert!(spot_check_convexity(&[&sp("x^2 + y^4")], true, 1000, 1).is_ok());
    }

    #[test]
    fn rejects_nonconvex_and_nonpositive() {
        assert!(spot_check_convexity(&[&sp("x^2 - y^2")], false, 1000, 1).is_err());
        assert!(spot_check_convexity(&[&sp("x^2 + y^2 - 1/2")], true, 1000, 1).is_err());
    }
}
