mod common;

use altproj::apm::{
    fejer_check, fit_residual_series, run_apm, run_recursion_oracle, step_residual_check, x2y4_monitor, AssertFlags,
    RecordSchedule, RecursionSpec, Scenario, Trace,
};
use altproj::proj::{ConvexSet, HypographSet, LinearSubspace};
use altproj::rates::predict_hypersurface_rate;
use common::{first_pair, poly, second_pair, QUARTIC};

const ASSERTED: AssertFlags = AssertFlags {
    convex: true,
    nondegenerate: true,
};

fn hypograph_run(span: &[Vec<f64>], u0: Vec<f64>, k: usize, schedule: RecordSchedule) -> Trace {
    let s = Scenario::new(
        ConvexSet::Hypograph(HypographSet::new(poly(QUARTIC, 2))),
        LinearSubspace::span(3, span).unwrap(),
        u0,
        k,
    )
    .unwrap()
    .with_schedule(schedule)
    .with_asserts(ASSERTED);
    run_apm(&s).unwrap()
}

fn two_poly_runs() -> Vec<Trace> {
    let s5 = 5f64.sqrt();
    let cases = [
        (first_pair(), vec![-2.0, 1.0, 0.0], vec![-0.2 / s5, 0.1 / s5, 0.0]),
        (first_pair(), vec![0.0, 1.0, 0.0], vec![0.0, 0.1, 0.0]),
        (first_pair(), vec![0.0, 1.0, 0.0], vec![0.0, -0.1, 0.0]),
        (second_pair(), vec![1.0, -2.0, 0.0], vec![0.1 / s5, -0.2 / s5, 0.0]),
    ];
    cases
        .into_iter()
        .map(|(a, dir, u0)| {
            let s = Scenario::new(
                ConvexSet::TwoPoly(a),
                LinearSubspace::span(3, &[dir]).unwrap(),
                u0,
                5_000,
            )
            .unwrap()
            .with_asserts(ASSERTED);
            run_apm(&s).unwrap()
        })
        .collect()
}

fn all_runs() -> Vec<Trace> {
    let plane = [vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
    let mut runs = vec![
        hypograph_run(&[vec![3.0, 4.0, 0.0]], vec![0.6, 0.8, 0.0], 5_000, RecordSchedule::default()),
        hypograph_run(&[vec![0.0, 1.0, 0.0]], vec![0.0, 0.3, 0.0], 5_000, RecordSchedule::default()),
        hypograph_run(&plane, vec![0.1, 0.1, 0.0], 5_000, RecordSchedule::default()),
    ];
    runs.extend(two_poly_runs());
    runs
}

#[test]
fn norms_decrease_and_fejer_holds() {
    for t in all_runs() {
        for w in t.records.windows(2) {
            assert!(w[1].norm_u <= w[0].norm_u * (1.0 + 1e-12), "norm grew at k = {}", w[1].k);
        }
        let f = fejer_check(&t);
        assert!(f.checked > 0);
        assert!(f.violations.is_empty(), "Fejér violations at {:?}", f.violations);
    }
}

#[test]
fn step_residual_is_bounded_and_detects_a_wrong_order() {
    let g = poly(QUARTIC, 2);
    let t = hypograph_run(&[vec![3.0, 4.0, 0.0]], vec![0.6, 0.8, 0.0], 100_000, RecordSchedule::default());
    let pred = predict_hypersurface_rate(&g, &[3.0, 4.0]).unwrap();
    let rep = step_residual_check(&t, &pred);
    assert!(rep.bounded, "head {} tail {}", rep.head_max, rep.tail_max);

    let mut wrong = pred.clone();
    wrong.d += 1;
    let rep = step_residual_check(&t, &wrong);
    assert!(!rep.bounded, "d + 1 stayed bounded: head {} tail {}", rep.head_max, rep.tail_max);
}

#[test]
fn zero_trace_has_no_residual() {
    let t = hypograph_run(&[vec![3.0, 4.0, 0.0]], vec![0.0, 0.0, 0.0], 10, RecordSchedule::default());
    let pred = predict_hypersurface_rate(&poly(QUARTIC, 2), &[3.0, 4.0]).unwrap();
    assert!(step_residual_check(&t, &pred).ratios.is_empty());
}

#[test]
fn oracle_reproduces_the_line_trace() {
    let g = poly(QUARTIC, 2);
    let pred = predict_hypersurface_rate(&g, &[3.0, 4.0]).unwrap();
    let k_max = 100_000;
    let t = hypograph_run(&[vec![3.0, 4.0, 0.0]], vec![0.6, 0.8, 0.0], k_max, RecordSchedule::default());
    let h = fit_residual_series(&t, &pred, 1).unwrap();
    let c = pred.d as f64 * pred.c0 * pred.c0;
    let q = 2 * pred.d - 2;
    let xs = run_recursion_oracle(
        &RecursionSpec::new(c, q, t.records[0].norm_u, k_max).with_tail(h),
    )
    .unwrap();
    let mut worst: f64 = 0.0;
    for r in t.records.iter().filter(|r| r.k >= 100) {
        worst = worst.max((xs[r.k] - r.norm_u).abs() / r.norm_u);
    }
    assert!(worst <= 0.01, "relative deviation {worst}");
}

#[test]
fn x2y4_region_is_invariant() {
    let plane = [vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
    for u0 in [vec![0.1, 0.1, 0.0], vec![-0.05, 0.2, 0.0], vec![0.2, -0.15, 0.0]] {
        let t = hypograph_run(&plane, u0.clone(), 20_000, RecordSchedule::dense());
        let rep = x2y4_monitor(&t, 0, 1, 0.05);
        assert!(rep.first_entry.is_some(), "{u0:?} never entered |x| < y²");
        assert!(rep.checked > 0);
        assert!(rep.violations.is_empty(), "{u0:?} left the region at {:?}", rep.violations);
    }
}
