// Scenario files drive the command line; the same pipeline is callable
// from code.

use altproj::cli::{predict, Config};
use altproj::poly::rat;

const REGION2: &str = r#"
name = "region2_ii"

[set]
kind = "two_poly"
f1 = "(x + 1/2)^2 + (y + 1/2)^4 - 5/16"
f2 = "x^2 + y^4"

[subspace]
span = [[1.0, -2.0, 0.0]]

[start]
u0 = [0.05, -0.1, 0.0]

[assert]
convex = true
"#;

pub fn run_example() {
    let cfg = Config::from_toml(REGION2).unwrap();
    let report = predict(&cfg).unwrap();
    print!("{}", report.to_kv());
    assert_eq!(report.prediction.lambda, rat(1, 2));
    println!("canonical form:\n{}", cfg.to_toml().unwrap());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
