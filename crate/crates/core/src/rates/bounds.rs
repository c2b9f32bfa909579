//! Upper bounds from Łojasiewicz exponents for subspaces of dimension ≥ 2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rate_exponent, RateKind, RatePrediction, RateSource};
use crate::error::{Error, Result};
use crate::poly::{loja_exponent_convenient, rat_to_f64, MultiPoly};
use crate::proj::LinearSubspace;

const SPHERE_SAMPLES: usize = 10_000;
const SPHERE_RADII: [f64; 3] = [1e-1, 1e-2, 1e-3];
const SPHERE_SEED: u64 = 0x1a7e;

fn integer_exponent(g: &MultiPoly) -> Result<u32> {
    let l = loja_exponent_convenient(g)?;
    if !l.is_integer() {
        return Err(Error::Precondition(format!("non-integral exponent {l}")));
    }
    Ok(rat_to_f64(&l) as u32)
}

fn bound(d: u32, c: f64, source: RateSource, estimate: bool) -> RatePrediction {
    if d <= 1 {
        return RatePrediction::linear(c, source);
    }
    let q = 2 * d - 2;
    RatePrediction {
        kind: RateKind::UpperBound,
        lambda: rate_exponent(d),
        limit_constant: (c > 0.0).then(|| ((d - 1) as f64 * c).powf(1.0 / q as f64)),
        d,
        c0: c,
        source,
        estimate,
    }
}

/// Smallest sampled `g(x)² / ‖x‖^{2d}` on spheres around the origin.
fn sample_constant(g: &MultiPoly, d: u32) -> f64 {
    let n = g.nvars();
    let cg = g.compile();
    let mut rng = ChaCha8Rng::seed_from_u64(SPHERE_SEED);
    let mut best = f64::INFINITY;
    let mut x = vec![0.0; n];
    for _ in 0..SPHERE_SAMPLES {
        let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let len = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if len == 0.0 {
            continue;
        }
        for r in SPHERE_RADII {
            for (xi, di) in x.iter_mut().zip(&dir) {
                *xi = r * di / len;
            }
            let v = cg.value(&x);
            best = best.min(v * v / r.powi(2 * d as i32));
        }
    }
    best
}

/// Bound for `B = {z = 0}`: `d = L(g)` and a sampled `C` with
/// `g(x)² ≥ C‖x‖^{2d}` near 0.
pub fn predict_upper_bound_hyperplane(
    g: &MultiPoly,
    assert_nondegenerate: bool,
) -> Result<RatePrediction> {
    if !assert_nondegenerate {
        return Err(Error::NotAsserted("nondegeneracy of the defining polynomial"));
    }
    let d = integer_exponent(g)?;
    Ok(bound(d, sample_constant(g, d), RateSource::HshpBound, true))
}

/// Bound for `B = B₀ × {0}` with `B₀` spanned by coordinate axes of the
/// x-space: `d = L(g|_{B₀})`.
pub fn predict_upper_bound_subspace(
    g: &MultiPoly,
    b0: &LinearSubspace,
    assert_nondegenerate: bool,
) -> Result<RatePrediction> {
    if !assert_nondegenerate {
        return Err(Error::NotAsserted("nondegeneracy of the restricted polynomial"));
    }
    if b0.ambient_dim() != g.nvars() {
        return Err(Error::DimensionMismatch {
            expected: g.nvars(),
            got: b0.ambient_dim(),
        });
    }
    let mut axes = Vec::new();
    for v in b0.basis() {
        let big: Vec<usize> = (0..v.len()).filter(|&i| v[i].abs() > 1e-12).collect();
        match big[..] {
            [i] => axes.push(i),
            _ => {
                return Err(Error::Precondition(
                    "subspace must be spanned by coordinate axes; rotate the data first".into(),
                ))
            }
        }
    }
    axes.sort_unstable();
    let restricted = g.restrict_vars(&axes);
    if restricted.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = integer_exponent(&restricted)?;
    Ok(bound(d, 0.0, RateSource::LojaSubspaceBound, false))
}
