use std::io::Write;

use crate::error::Result;

/// Geometric recording: every step below `2·points_per_octave`, then
/// `points_per_octave` anchors per doubling of `k`. The step after each
/// anchor is recorded too, so consecutive-step relations can be checked
/// on the trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecordSchedule {
    pub points_per_octave: usize,
}

impl Default for RecordSchedule {
    fn default() -> Self {
        Self {
            points_per_octave: 16,
        }
    }
}

impl RecordSchedule {
    /// Records every step.
    pub fn dense() -> Self {
        Self {
            points_per_octave: usize::MAX / 4,
        }
    }

    fn is_anchor(&self, k: usize) -> bool {
        let ppo = self.points_per_octave.max(1);
        if k < 2 * ppo {
            return true;
        }
        let octave = usize::BITS - 1 - k.leading_zeros();
        let stride = ((1usize << octave) / ppo).max(1);
        k % stride == 0
    }

    pub fn records(&self, k: usize) -> bool {
        self.is_anchor(k) || (k > 0 && self.is_anchor(k - 1))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub k: usize,
    pub u: Vec<f64>,
    pub norm_u: f64,
    /// `a_k = P_A(u_k)`.
    pub a: Vec<f64>,
    pub active: Vec<usize>,
    /// `‖a_k − P_B a_k‖`.
    pub dist_a_to_b: f64,
    pub kkt_residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    MaxIter,
    /// `‖u_k‖` fell below the noise floor.
    BelowFloor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub records: Vec<TraceRecord>,
    pub terminated: Termination,
}

impl Trace {
    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    /// Pairs of records for consecutive steps `k`, `k + 1`.
    pub fn consecutive(&self) -> impl Iterator<Item = (&TraceRecord, &TraceRecord)> {
        self.records
            .windows(2)
            .filter(|w| w[1].k == w[0].k + 1)
            .map(|w| (&w[0], &w[1]))
    }

    pub fn record_at(&self, k: usize) -> Option<&TraceRecord> {
        self.records
            .binary_search_by_key(&k, |r| r.k)
            .ok()
            .map(|i| &self.records[i])
    }

    /// `k,norm_u,u_1..u_m,active,dist_a_to_B`; active constraints are joined
    /// by `;`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        let m = self.records.first().map_or(0, |r| r.u.len());
        let mut header = String::from("k,norm_u");
        for i in 1..=m {
            header.push_str(&format!(",u_{i}"));
        }
        header.push_str(",active,dist_a_to_B");
        writeln!(w, "{header}")?;
        for r in &self.records {
            let mut line = format!("{},{:.16e}", r.k, r.norm_u);
            for v in &r.u {
                line.push_str(&format!(",{v:.16e}"));
            }
            let active: Vec<String> = r.active.iter().map(usize::to_string).collect();
            line.push_str(&format!(",{},{:.16e}", active.join(";"), r.dist_a_to_b));
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_is_dense_then_geometric() {
        let s = RecordSchedule {
            points_per_octave: 4,
        };
        let ks: Vec<usize> = (0..40).filter(|&k| s.records(k)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 20, 21, 24, 25, 28, 29, 32, 33]);
        let n = (0..1_000_000).filter(|&k| RecordSchedule::default().records(k)).count();
        assert!(n < 1500, "{n}");
    }
}
