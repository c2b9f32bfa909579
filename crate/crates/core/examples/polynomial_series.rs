// Exact polynomial input, restriction to lines and implicit series.

use altproj::poly::{parse_poly, restrict_direction_exact, restrict_line, rat_int};
use altproj::rates::solve_implicit_series;

pub fn run_example() {
    let f = parse_poly("(x + 1/2)^2 + (y + 1/2)^4 - 5/16", 2).unwrap();
    println!("expanded: {} terms, degree {}", f.len(), f.degree());

    let raw = restrict_direction_exact(&f, &[rat_int(1), rat_int(-2)]).unwrap();
    println!("f(t(1,-2)) = {:?}", raw.coeffs());
    assert_eq!(raw.lowest_term().unwrap(), (2, rat_int(7)));

    let unit = restrict_line(&f, &[1.0, -2.0]).unwrap();
    println!("unit direction: {:?}", unit.coeffs());

    // x + g_x g = 0 solved for x = phi(y); the lowest degree is at least 5
    let g = parse_poly("(x - y^2)^2 + y^4", 2).unwrap();
    let s = solve_implicit_series(&g, 1, 9).unwrap();
    let phi = &s.univariate().unwrap()[0];
    println!("phi(y) = {:?}", phi.coeffs());
    assert!(s.order().unwrap() >= 5);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
