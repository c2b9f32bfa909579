mod common;

use altproj::proj::{project_twopoly, psi_map, SolverOptions, TwoPolySet};
use altproj::rates::solve_curve_series;
use altproj::region::{classify_point, trace_partition_boundary, Polyline, RegionLabel};
use common::{first_pair, rng, second_pair};
use rand::Rng;

fn boundaries(a: &TwoPolySet) -> [Polyline; 2] {
    [1, 2].map(|w| {
        let pl = trace_partition_boundary(a, w, (-0.25, 0.25), 2001).unwrap();
        assert!(pl.skipped.is_empty());
        pl
    })
}

#[test]
fn labels_agree_with_active_sets() {
    let opts = SolverOptions::default();
    let mut r = rng(3);
    for a in [first_pair(), second_pair()] {
        let lines = boundaries(&a);
        let mut tested = 0;
        while tested < 200 {
            let p: [f64; 2] = [r.gen_range(-0.1..0.1), r.gen_range(-0.1..0.1)];
            if p[0].hypot(p[1]) > 0.1 || lines.iter().any(|l| l.distance(&p) < 1e-6) {
                continue;
            }
            tested += 1;
            let label = classify_point(&a, &p, &opts);
            let proj = project_twopoly(&a, &[p[0], p[1], 0.0], &opts).unwrap();
            assert_eq!(
                label.active_set(),
                Some(proj.active.clone()),
                "{p:?}: label {label}, active {:?}",
                proj.active
            );
        }
    }
}

#[test]
fn images_of_surface_points_are_labelled_by_that_surface() {
    let opts = SolverOptions::default();
    let mut r = rng(4);
    for a in [first_pair(), second_pair()] {
        let mut tested = 0;
        while tested < 100 {
            let q: [f64; 2] = [r.gen_range(-0.1..0.1), r.gen_range(-0.1..0.1)];
            let gap = a.f1().value(&q) - a.f2().value(&q);
            if q[0].hypot(q[1]) > 0.1 || gap <= 0.0 {
                continue;
            }
            tested += 1;
            let p = psi_map(a.f1(), &q).unwrap();
            assert_eq!(classify_point(&a, &[p[0], p[1]], &opts), RegionLabel::Surface1, "q = {q:?}");
        }
    }
}

#[test]
fn boundaries_are_tangent_to_the_curve_direction() {
    for a in [first_pair(), second_pair()] {
        let cs = solve_curve_series(a.f1().poly(), a.f2().poly(), 4).unwrap();
        let alpha = [
            altproj::poly::rat_to_f64(&cs.alpha[0]),
            altproj::poly::rat_to_f64(&cs.alpha[1]),
        ];
        for which in [1, 2] {
            let pl = trace_partition_boundary(&a, which, (-1e-4, 1e-4), 3).unwrap();
            let [lo, mid, hi] = [pl.points[0], pl.points[1], pl.points[2]];
            assert!(mid[0].hypot(mid[1]) < 1e-15);
            for end in [lo, hi] {
                let cross = (end[0] * alpha[1] - end[1] * alpha[0]).abs();
                let angle = (cross / (end[0].hypot(end[1]) * alpha[0].hypot(alpha[1]))).asin();
                assert!(angle <= 1e-3, "boundary {which} angle {angle:e}");
            }
        }
    }
}

#[test]
fn tiny_circle_matches_directional_labels() {
    let opts = SolverOptions::default();
    let a = first_pair();
    // the contact-curve direction is (−2, 1); B′ points are labelled by side
    let s = 5f64.sqrt();
    let t = 1e-9;
    assert_eq!(classify_point(&a, &[-2.0 * t / s, t / s], &opts), RegionLabel::Curve);
    assert_eq!(classify_point(&a, &[0.0, t], &opts), RegionLabel::Surface1);
    assert_eq!(classify_point(&a, &[0.0, -t], &opts), RegionLabel::Surface2);
}
