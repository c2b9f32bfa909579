// `A = {z ≥ max(f₁, f₂)}` with `f₁ = x² + y⁴`, `f₂ = (x−1)² + (y−1)⁴ − 2`:
// the contact curve, the multiplier test and the resulting rate.

use altproj::apm::{run_apm, AssertFlags, Scenario};
use altproj::estimate::check_limit_product;
use altproj::poly::{parse_poly, rat_int};
use altproj::proj::{ConvexSet, LinearSubspace, TwoPolySet};
use altproj::rates::{cond2poly_check, predict_curve_rate, solve_curve_series, CurveVerdict};

pub fn run_example() {
    let f1 = parse_poly("x^2 + y^4", 2).unwrap();
    let f2 = parse_poly("(x - 1)^2 + (y - 1)^4 - 2", 2).unwrap();

    let cs = solve_curve_series(&f1, &f2, 6).unwrap();
    println!("alpha = {:?}, beta = {:?}", cs.alpha, cs.beta);
    for (i, phi) in cs.phi.iter().enumerate() {
        println!("phi_{} = {:?}", i + 1, phi.coeffs());
    }

    let cond = cond2poly_check(&f1, &f2, &[rat_int(-2), rat_int(1)]).unwrap();
    println!("verdict {:?}, multipliers {:?}", cond.verdict, cond.lambdas);
    assert_eq!(cond.verdict, CurveVerdict::ProjectsToCurve);

    let pred = predict_curve_rate(&f1, &f2).unwrap();
    println!("predicted: {pred}");

    let s = 5f64.sqrt();
    let scenario = Scenario::new(
        ConvexSet::TwoPoly(TwoPolySet::new(f1, f2).unwrap()),
        LinearSubspace::span(3, &[vec![-2.0, 1.0, 0.0]]).unwrap(),
        vec![-0.2 / s, 0.1 / s, 0.0],
        20_000,
    )
    .unwrap()
    .with_asserts(AssertFlags {
        convex: true,
        nondegenerate: false,
    });
    let trace = run_apm(&scenario).unwrap();
    let last = trace.last().unwrap();
    assert_eq!(last.active, vec![1, 2]);
    let (k, p) = *check_limit_product(&trace, &pred).unwrap().last().unwrap();
    println!("product at k = {k}: {p:.4}");
    assert!((p - 1.0).abs() < 0.05);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
