#![allow(dead_code)]

use altproj::poly::{parse_poly, MultiPoly};
use altproj::proj::TwoPolySet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded from `ALTPROJ_SEED` when set.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("ALTPROJ_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0xa17);
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn poly(s: &str, n: usize) -> MultiPoly {
    parse_poly(s, n).unwrap()
}

pub const QUARTIC: &str = "x^2 + y^4";
pub const SHIFT_DOWN: &str = "(x - 1)^2 + (y - 1)^4 - 2";
pub const SHIFT_UP: &str = "(x + 1/2)^2 + (y + 1/2)^4 - 5/16";

/// `f₁ = x² + y⁴`, `f₂ = (x−1)² + (y−1)⁴ − 2`.
pub fn first_pair() -> TwoPolySet {
    TwoPolySet::new(poly(QUARTIC, 2), poly(SHIFT_DOWN, 2)).unwrap()
}

/// `f₁` shifted up, `f₂ = x² + y⁴`.
pub fn second_pair() -> TwoPolySet {
    TwoPolySet::new(poly(SHIFT_UP, 2), poly(QUARTIC, 2)).unwrap()
}
