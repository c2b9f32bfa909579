// `A = {z ≥ x² + y⁴}` and the plane `B = {z = 0}`: starting points on the
// axes stay there and inherit the line rates; a generic start does not.

use altproj::apm::{run_apm, AssertFlags, Scenario};
use altproj::poly::parse_poly;
use altproj::proj::{ConvexSet, HypographSet, LinearSubspace};
use altproj::rates::predict_upper_bound_hyperplane;

fn run(u0: [f64; 3], k: usize) -> altproj::apm::Trace {
    let g = parse_poly("x^2 + y^4", 2).unwrap();
    let s = Scenario::new(
        ConvexSet::Hypograph(HypographSet::new(g)),
        LinearSubspace::coordinate(3, &[0, 1]).unwrap(),
        u0.to_vec(),
        k,
    )
    .unwrap()
    .with_asserts(AssertFlags {
        convex: true,
        nondegenerate: true,
    });
    run_apm(&s).unwrap()
}

pub fn run_example() {
    let g = parse_poly("x^2 + y^4", 2).unwrap();
    println!("bound: {}", predict_upper_bound_hyperplane(&g, true).unwrap());

    let k = 20_000;
    let x_axis = run([0.1, 0.0, 0.0], k).last().unwrap().clone();
    let p = 2.0 * (k as f64).sqrt() * x_axis.norm_u;
    println!("x-axis: 2 sqrt(k) ||u_k|| = {p:.4}, y stays {}", x_axis.u[1]);
    assert_eq!(x_axis.u[1], 0.0);

    let y_axis = run([0.0, 0.3, 0.0], k).last().unwrap().clone();
    let p = (24.0 * k as f64).powf(1.0 / 6.0) * y_axis.norm_u;
    println!("y-axis: (24k)^(1/6) ||u_k|| = {p:.4}");

    let diag = run([0.1, 0.1, 0.0], k).last().unwrap().clone();
    println!("diagonal: u_k = {:?}", diag.u);
    assert!(diag.u[0].abs() < diag.u[1].abs());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
