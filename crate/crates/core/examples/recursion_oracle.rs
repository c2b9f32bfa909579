// The scalar recursion `x_{k+1}(1 + C x_{k+1}^q) = x_k` and its limit
// `(qC)^{1/q} k^{1/q} x_k → 1`.

use altproj::apm::{run_recursion_oracle, RecursionSpec};

pub fn run_example() {
    for (c, q) in [(1.0, 1), (2.0, 2), (0.5, 3)] {
        let k = 100_000;
        let xs = run_recursion_oracle(&RecursionSpec::new(c, q, 0.5, k)).unwrap();
        let q = q as f64;
        let scaled = (q * c * k as f64).powf(1.0 / q) * xs[k];
        println!("C = {c}, q = {q}: scaled x_k = {scaled:.6}");
        assert!((scaled - 1.0).abs() < 0.03);
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
