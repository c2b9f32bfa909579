// The line `B = span{(3, 4, 0)}` against `A = {z ≥ x² + y⁴}`: the predicted
// limit of `L √k ‖u_k‖` compared with a simulated trace.

use altproj::apm::{run_apm, AssertFlags, Scenario};
use altproj::estimate::{check_limit_product, fit_rate};
use altproj::poly::parse_poly;
use altproj::proj::{ConvexSet, HypographSet, LinearSubspace};
use altproj::rates::predict_hypersurface_rate;

pub fn run_example() {
    let g = parse_poly("x^2 + y^4", 2).unwrap();
    let pred = predict_hypersurface_rate(&g, &[3.0, 4.0]).unwrap();
    println!("predicted: {pred}");

    let b = LinearSubspace::span(3, &[vec![3.0, 4.0, 0.0]]).unwrap();
    let scenario = Scenario::new(
        ConvexSet::Hypograph(HypographSet::new(g)),
        b,
        vec![0.6, 0.8, 0.0],
        20_000,
    )
    .unwrap()
    .with_asserts(AssertFlags {
        convex: true,
        nondegenerate: false,
    });
    let trace = run_apm(&scenario).unwrap();
    let fit = fit_rate(&trace, 0.5).unwrap();
    let (k, p) = *check_limit_product(&trace, &pred).unwrap().last().unwrap();
    println!("fitted exponent {:.4}, product at k = {k}: {p:.4}", fit.fitted_exponent);
    assert!((fit.fitted_exponent - 0.5).abs() < 0.03);
    assert!((p - 1.0).abs() < 0.05);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
