// Same sets, same line `B′ = span{(0, 1, 0)}`, opposite starting points:
// one side is sublinear, the other converges linearly.

use altproj::apm::{run_apm, AssertFlags, Scenario};
use altproj::estimate::detect_linear;
use altproj::poly::parse_poly;
use altproj::proj::{ConvexSet, LinearSubspace, TwoPolySet};

fn scenario(y0: f64, k: usize) -> Scenario {
    let a = TwoPolySet::new(
        parse_poly("x^2 + y^4", 2).unwrap(),
        parse_poly("(x - 1)^2 + (y - 1)^4 - 2", 2).unwrap(),
    )
    .unwrap();
    Scenario::new(
        ConvexSet::TwoPoly(a),
        LinearSubspace::coordinate(3, &[1]).unwrap(),
        vec![0.0, y0, 0.0],
        k,
    )
    .unwrap()
    .with_asserts(AssertFlags {
        convex: true,
        nondegenerate: false,
    })
}

pub fn run_example() {
    let plus = run_apm(&scenario(0.1, 5_000)).unwrap();
    let last = plus.last().unwrap();
    println!("B'+: ||u_{}|| = {:.3e}, active {:?}", last.k, last.norm_u, last.active);
    assert_eq!(last.active, vec![1]);
    assert!(detect_linear(&plus).is_none());

    let minus = run_apm(&scenario(-0.1, 5_000)).unwrap();
    let last = minus.last().unwrap();
    let rho = detect_linear(&minus).expect("geometric decay");
    println!("B'-: stopped at k = {} with ratio {rho:.6}", last.k);
    assert!(rho < 1.0);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
