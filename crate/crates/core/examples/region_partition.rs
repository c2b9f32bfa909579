// Which part of `∂A` receives the projection of a plane point, and the
// traced boundaries between the three regions.

use altproj::poly::parse_poly;
use altproj::proj::{SolverOptions, TwoPolySet};
use altproj::region::{classify_point, classify_scan, trace_partition_boundary, GridSpec, RegionLabel};

pub fn run_example() {
    let a = TwoPolySet::new(
        parse_poly("x^2 + y^4", 2).unwrap(),
        parse_poly("(x - 1)^2 + (y - 1)^4 - 2", 2).unwrap(),
    )
    .unwrap();
    let opts = SolverOptions::default();

    let s = 5f64.sqrt();
    for (p, want) in [
        ([0.0, 0.05], RegionLabel::Surface1),
        ([0.0, -0.05], RegionLabel::Surface2),
        ([-0.1 / s, 0.05 / s], RegionLabel::Curve),
    ] {
        let got = classify_point(&a, &p, &opts);
        println!("{p:?} -> {got}");
        assert_eq!(got, want);
    }

    for which in [1, 2] {
        let line = trace_partition_boundary(&a, which, (-0.1, 0.1), 21).unwrap();
        println!("boundary {which}: {} points, ends {:?} .. {:?}", line.points.len(), line.points[0], line.points[20]);
    }

    let grid = GridSpec {
        x: (-0.2, 0.2),
        y: (-0.2, 0.2),
        nx: 21,
        ny: 21,
    };
    let labels = classify_scan(&a, &grid, &opts);
    let count = |l| labels.iter().filter(|g| g.label == l).count();
    println!(
        "grid: {} surface1, {} surface2, {} curve, {} undetermined",
        count(RegionLabel::Surface1),
        count(RegionLabel::Surface2),
        count(RegionLabel::Curve),
        count(RegionLabel::Undetermined)
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}
