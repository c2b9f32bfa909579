// Newton diagrams, Łojasiewicz exponents and the resulting upper bounds.

use altproj::poly::{loja_exponent_convenient, newton_diagram, parse_poly, rat, rat_int};
use altproj::proj::LinearSubspace;
use altproj::rates::{predict_upper_bound_hyperplane, predict_upper_bound_subspace};

pub fn run_example() {
    let f = parse_poly("x1^6 + x2^4 + x3^2", 3).unwrap();
    let nd = newton_diagram(&f).unwrap();
    println!("vertices {:?}, convenient {}", nd.vertices, nd.convenient);
    let l = loja_exponent_convenient(&f).unwrap();
    println!("exponent {l}");
    assert_eq!(l, rat_int(6));

    let whole = predict_upper_bound_hyperplane(&f, true).unwrap();
    println!("B = {{z = 0}}: {whole}");

    let x3_axis = LinearSubspace::coordinate(3, &[2]).unwrap();
    let bound = predict_upper_bound_subspace(&f, &x3_axis, true).unwrap();
    println!("B0 = x3-axis: {bound}");
    assert_eq!(bound.lambda, rat(1, 2));

    let skew = parse_poly("x^4 + y^4 + x*y", 2).unwrap();
    println!("x^4 + y^4 + xy vertices {:?}", newton_diagram(&skew).unwrap().vertices);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
