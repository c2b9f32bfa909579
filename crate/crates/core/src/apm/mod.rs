//! The alternating projection iteration `u_{k+1} = P_B(P_A(u_k))`, the
//! scalar recursion oracle, and per-step trace monitors.

mod monitor;
mod oracle;
mod trace;

pub use monitor::{
    fejer_check, fit_residual_series, step_residual_check, x2y4_monitor, FejerReport,
    StepResidualReport, X2y4Report,
};
pub use oracle::{run_recursion_oracle, RecursionSpec};
pub use trace::{RecordSchedule, Termination, Trace, TraceRecord};

use crate::error::{Error, Result};
use crate::proj::{spot_check_convexity, ConvexSet, LinearSubspace, SolverOptions};

/// Iterates with `‖u_k‖` below this are rounding noise.
pub const NORM_FLOOR: f64 = 1e-14;

const CONVEXITY_SAMPLES: usize = 1000;
const CONVEXITY_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssertFlags {
    pub convex: bool,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub set: ConvexSet,
    pub subspace: LinearSubspace,
    pub u0: Vec<f64>,
    pub max_iter: usize,
    pub schedule: RecordSchedule,
    pub solver: SolverOptions,
    pub asserts: AssertFlags,
}

impl Scenario {
    /// Checks dimensions, `K ≥ 1` and `u0 ∈ B`.
    pub fn new(
        set: ConvexSet,
        subspace: LinearSubspace,
        u0: Vec<f64>,
        max_iter: usize,
    ) -> Result<Self> {
        let n = set.ambient_dim();
        for got in [subspace.ambient_dim(), u0.len()] {
            if got != n {
                return Err(Error::DimensionMismatch { expected: n, got });
            }
        }
        if max_iter == 0 {
            return Err(Error::Precondition("iteration budget must be at least 1".into()));
        }
        if !subspace.contains(&u0, 1e-12) {
            return Err(Error::Precondition("initial point is not in the subspace".into()));
        }
        Ok(Self {
            set,
            subspace,
            u0,
            max_iter,
            schedule: RecordSchedule::default(),
            solver: SolverOptions::default(),
            asserts: AssertFlags::default(),
        })
    }

    pub fn with_schedule(mut self, schedule: RecordSchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_solver(mut self, solver: SolverOptions) -> Self {
        self.solver = solver;
        self
    }

    pub fn with_asserts(mut self, asserts: AssertFlags) -> Self {
        self.asserts = asserts;
        self
    }

    /// The convexity assertion must be present and survive sampling.
    pub fn check_assertions(&self) -> Result<()> {
        if !self.asserts.convex {
            return Err(Error::NotAsserted("convexity of the defining polynomials"));
        }
        match &self.set {
            ConvexSet::Hypograph(a) => {
                spot_check_convexity(&[a.g()], true, CONVEXITY_SAMPLES, CONVEXITY_SEED)
            }
            ConvexSet::TwoPoly(a) => spot_check_convexity(
                &[a.f1(), a.f2()],
                false,
                CONVEXITY_SAMPLES,
                CONVEXITY_SEED,
            ),
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn run_apm(s: &Scenario) -> Result<Trace> {
    s.check_assertions()?;
    let mut records = Vec::new();
    let mut u = s.u0.clone();
    let mut k = 0usize;
    loop {
        let norm_u = norm(&u);
        let pa = s.set.project(&u, &s.solver).map_err(|e| Error::AtStep {
            step: k,
            source: Box::new(e),
        })?;
        let b = s.subspace.project(&pa.point);
        let dist: Vec<f64> = pa.point.iter().zip(&b).map(|(x, y)| x - y).collect();
        let below_floor = norm_u < NORM_FLOOR;
        if s.schedule.records(k) || k == s.max_iter || below_floor {
            records.push(TraceRecord {
                k,
                u: u.clone(),
                norm_u,
                a: pa.point,
                active: pa.active,
                dist_a_to_b: norm(&dist),
                kkt_residual: pa.residual,
            });
        }
        if below_floor {
            return Ok(Trace {
                records,
                terminated: Termination::BelowFloor,
            });
        }
        if k == s.max_iter {
            return Ok(Trace {
                records,
                terminated: Termination::MaxIter,
            });
        }
        u = b;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::proj::HypographSet;

    fn basic(dir: [f64; 3], t: f64, k: usize) -> Scenario {
        let set = ConvexSet::Hypograph(HypographSet::new(parse_poly("x^2 + y^4", 2).unwrap()));
        let b = LinearSubspace::span(3, &[dir.to_vec()]).unwrap();
        let u0 = b.basis()[0].iter().map(|v| v * t).collect();
        Scenario::new(set, b, u0, k).unwrap().with_asserts(AssertFlags {
            convex: true,
            nondegenerate: false,
        })
    }

    #[test]
    fn zero_start_gives_single_record() {
        let t = run_apm(&basic([3.0, 4.0, 0.0], 0.0, 100)).unwrap();
        assert_eq!(t.records.len(), 1);
        assert_eq!(t.records[0].norm_u, 0.0);
        assert_eq!(t.terminated, Termination::BelowFloor);
    }

    #[test]
    fn norms_decrease() {
        let t = run_apm(&basic([3.0, 4.0, 0.0], 0.1, 2000)).unwrap();
        assert_eq!(t.last().unwrap().k, 2000);
        for w in t.records.windows(2) {
            assert!(w[1].norm_u <= w[0].norm_u);
        }
    }

    #[test]
    fn requires_convexity_assertion() {
        let s = basic([3.0, 4.0, 0.0], 0.1, 10).with_asserts(AssertFlags::default());
        assert!(matches!(run_apm(&s), Err(Error::NotAsserted(_))));
    }

    #[test]
    fn rejects_start_outside_subspace() {
        let set = ConvexSet::Hypograph(HypographSet::new(parse_poly("x^2 + y^4", 2).unwrap()));
        let b = LinearSubspace::span(3, &[vec![1.0, 0.0, 0.0]]).unwrap();
        assert!(Scenario::new(set, b, vec![0.0, 0.1, 0.0], 10).is_err());
    }
}
