//! The scalar recursion `x_{k+1}(1 + C x_{k+1}^q + x_{k+1}^{q+1} h(x_{k+1})) = x_k`.

use crate::error::{Error, Result};
use crate::poly::UniSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct RecursionSpec {
    pub c: f64,
    pub q: u32,
    pub h: UniSeries<f64>,
    pub x0: f64,
    pub iterations: usize,
}

impl RecursionSpec {
    pub fn new(c: f64, q: u32, x0: f64, iterations: usize) -> Self {
        Self {
            c,
            q,
            h: UniSeries::zero(0),
            x0,
            iterations,
        }
    }

    pub fn with_tail(mut self, h: UniSeries<f64>) -> Self {
        self.h = h;
        self
    }

    /// Forward map `F(x)` and its derivative.
    fn forward(&self, x: f64) -> (f64, f64) {
        let q = self.q as i32;
        let hx = self.h.eval(x);
        let dh = self.h.derivative().eval(x);
        let xq = x.powi(q);
        let f = x * (1.0 + self.c * xq + x * xq * hx);
        let df = 1.0
            + (q as f64 + 1.0) * self.c * xq
            + (q as f64 + 2.0) * x * xq * hx
            + x * x * xq * dh;
        (f, df)
    }
}

const SAMPLES_FOR_MONOTONICITY: usize = 1000;

/// `x_0, x_1, …, x_K`, each step inverting the increasing map `F` on
/// `[0, x_k]` by safeguarded Newton to relative accuracy `1e-15`.
pub fn run_recursion_oracle(r: &RecursionSpec) -> Result<Vec<f64>> {
    if !(r.c > 0.0) || r.q == 0 {
        return Err(Error::Precondition(format!(
            "recursion needs C > 0 and q ≥ 1, got C = {}, q = {}",
            r.c, r.q
        )));
    }
    if !(r.x0 >= 0.0) {
        return Err(Error::Precondition("x0 must be nonnegative".into()));
    }
    for i in 0..=SAMPLES_FOR_MONOTONICITY {
        let x = r.x0 * i as f64 / SAMPLES_FOR_MONOTONICITY as f64;
        if r.forward(x).1 <= 0.0 {
            return Err(Error::MonotonicityViolation { step: 0 });
        }
    }
    let mut xs = Vec::with_capacity(r.iterations + 1);
    xs.push(r.x0);
    let mut x = r.x0;
    for k in 0..r.iterations {
        x = invert_step(r, x).map_err(|e| match e {
            Error::MonotonicityViolation { .. } => Error::MonotonicityViolation { step: k },
            other => other,
        })?;
        xs.push(x);
    }
    Ok(xs)
}

fn invert_step(r: &RecursionSpec, target: f64) -> Result<f64> {
    if target == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, target);
    let (f_hi, _) = r.forward(hi);
    if f_hi < target {
        return Err(Error::MonotonicityViolation { step: 0 });
    }
    let mut y = target;
    for _ in 0..200 {
        let (f, df) = r.forward(y);
        if df <= 0.0 {
            return Err(Error::MonotonicityViolation { step: 0 });
        }
        let g = f - target;
        if g > 0.0 {
            hi = y;
        } else {
            lo = y;
        }
        let mut next = y - g / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - y).abs() <= 1e-15 * next.abs() || hi - lo <= 1e-15 * hi {
            return Ok(next);
        }
        y = next;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_start_stays_zero() {
        let xs = run_recursion_oracle(&RecursionSpec::new(1.0, 1, 0.0, 10)).unwrap();
        assert!(xs.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn steps_invert_forward_map() {
        let spec = RecursionSpec::new(2.0, 2, 0.3, 50);
        let xs = run_recursion_oracle(&spec).unwrap();
        for w in xs.windows(2) {
            let (f, _) = spec.forward(w[1]);
            assert!((f - w[0]).abs() <= 3e-15 * w[0]);
        }
    }

    #[test]
    fn detects_decreasing_map() {
        let h = UniSeries::from_poly(vec![-100.0]);
        let spec = RecursionSpec::new(1.0, 1, 0.5, 10).with_tail(h);
        assert!(matches!(
            run_recursion_oracle(&spec),
            Err(Error::MonotonicityViolation { .. })
        ));
    }

    #[test]
    fn harmonic_limit() {
        let xs = run_recursion_oracle(&RecursionSpec::new(1.0, 1, 0.5, 100_000)).unwrap();
        let p = 1e5 * xs[100_000];
        assert!((p - 1.0).abs() < 0.01, "{p}");
    }
}
