//! Scenario files: TOML with one section per concern.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::apm::{AssertFlags, RecordSchedule, RecursionSpec, Scenario};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, Rational, UniSeries};
use crate::proj::{ConvexSet, HypographSet, LinearSubspace, SolverOptions, TwoPolySet};
use crate::region::GridSpec;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<SetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<StartSpec>,
    #[serde(default)]
    pub run: RunSpec,
    #[serde(default)]
    pub solver: SolverSpec,
    #[serde(default)]
    pub assert: AssertSpec,
    #[serde(default)]
    pub verify: VerifySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<ExpectSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classify: Option<ClassifySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
}

/// `A = {z ≥ g(x)}` over `n` variables, or the two-polynomial set in ℝ³.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Hypograph { g: String },
    TwoPoly { f1: String, f2: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    pub span: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartSpec {
    pub u0: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSpec {
    pub max_iter: usize,
    pub points_per_octave: usize,
    pub dense: bool,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            max_iter: 100_000,
            points_per_octave: RecordSchedule::default().points_per_octave,
            dense: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSpec {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverSpec {
    fn default() -> Self {
        let d = SolverOptions::default();
        Self {
            tol: d.tol,
            max_iter: d.max_iter,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AssertSpec {
    pub convex: bool,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySpec {
    pub tol_exponent: f64,
    /// Accepted range of `L k^λ ‖u_k‖` at the last step.
    pub product_band: [f64; 2],
    /// Fraction of the `log k` range used by the fit.
    pub tail_fraction: f64,
    /// Explicit `[k_lo, k_hi]` fit window; overrides `tail_fraction`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_window: Option<[usize; 2]>,
}

impl Default for VerifySpec {
    fn default() -> Self {
        Self {
            tol_exponent: 0.02,
            product_band: [0.95, 1.05],
            tail_fraction: 0.5,
            fit_window: None,
        }
    }
}

/// Replaces the predicted exponent and constant, e.g. for negative controls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_constant: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifySpec {
    /// Explicit points; when present the grid fields are ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default = "unit_range")]
    pub x: [f64; 2],
    #[serde(default = "unit_range")]
    pub y: [f64; 2],
    #[serde(default = "grid_size")]
    pub nx: usize,
    #[serde(default = "grid_size")]
    pub ny: usize,
}

fn unit_range() -> [f64; 2] {
    [-1.0, 1.0]
}

fn grid_size() -> usize {
    101
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionSpec {
    pub window: [f64; 2],
    #[serde(default = "partition_samples")]
    pub samples: usize,
}

fn partition_samples() -> usize {
    201
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub c: f64,
    pub q: u32,
    pub x0: f64,
    pub iterations: usize,
    /// Coefficients of the tail series `h`, lowest degree first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h: Vec<f64>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Canonical form; `from_toml(to_toml(c)) == c`.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    fn section<'a, T>(&self, v: &'a Option<T>, name: &str) -> Result<&'a T> {
        v.as_ref()
            .ok_or_else(|| Error::Config(format!("scenario {:?} lacks [{name}]", self.name)))
    }

    pub fn u0(&self) -> Result<&[f64]> {
        Ok(&self.section(&self.start, "start")?.u0)
    }

    pub fn convex_set(&self) -> Result<ConvexSet> {
        match self.section(&self.set, "set")? {
            SetSpec::Hypograph { g } => {
                let n = self.u0()?.len();
                if n < 2 {
                    return Err(Error::Config("u0 needs at least two coordinates".into()));
                }
                Ok(ConvexSet::Hypograph(HypographSet::new(parse_poly(g, n - 1)?)))
            }
            SetSpec::TwoPoly { f1, f2 } => Ok(ConvexSet::TwoPoly(TwoPolySet::new(
                parse_poly(f1, 2)?,
                parse_poly(f2, 2)?,
            )?)),
        }
    }

    /// The two-polynomial set, when that is the configured kind.
    pub fn two_poly(&self) -> Result<Option<TwoPolySet>> {
        match self.section(&self.set, "set")? {
            SetSpec::TwoPoly { f1, f2 } => {
                Ok(Some(TwoPolySet::new(parse_poly(f1, 2)?, parse_poly(f2, 2)?)?))
            }
            SetSpec::Hypograph { .. } => Ok(None),
        }
    }

    pub fn subspace(&self) -> Result<LinearSubspace> {
        let span = &self.section(&self.subspace, "subspace")?.span;
        let n = self.convex_set()?.ambient_dim();
        if let Some(v) = span.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        LinearSubspace::span(n, span)
    }

    pub fn solver(&self) -> SolverOptions {
        SolverOptions {
            tol: self.solver.tol,
            max_iter: self.solver.max_iter,
        }
    }

    pub fn asserts(&self) -> AssertFlags {
        AssertFlags {
            convex: self.assert.convex,
            nondegenerate: self.assert.nondegenerate,
        }
    }

    pub fn scenario(&self) -> Result<Scenario> {
        let schedule = if self.run.dense {
            RecordSchedule::dense()
        } else {
            RecordSchedule {
                points_per_octave: self.run.points_per_octave,
            }
        };
        Ok(Scenario::new(
            self.convex_set()?,
            self.subspace()?,
            self.u0()?.to_vec(),
            self.run.max_iter,
        )?
        .with_schedule(schedule)
        .with_solver(self.solver())
        .with_asserts(self.asserts()))
    }

    pub fn expected_lambda(&self) -> Result<Option<Rational>> {
        match self.expect.as_ref().and_then(|e| e.lambda.as_deref()) {
            None => Ok(None),
            Some(s) => Rational::from_str(s.trim())
                .map(Some)
                .map_err(|_| Error::Config(format!("expect.lambda: invalid rational {s:?}"))),
        }
    }

    pub fn grid(&self) -> Result<Option<GridSpec>> {
        let c = self.section(&self.classify, "classify")?;
        if c.points.is_some() {
            return Ok(None);
        }
        Ok(Some(GridSpec {
            x: (c.x[0], c.x[1]),
            y: (c.y[0], c.y[1]),
            nx: c.nx,
            ny: c.ny,
        }))
    }

    pub fn recursion(&self) -> Result<RecursionSpec> {
        let o = self.section(&self.oracle, "oracle")?;
        let mut spec = RecursionSpec::new(o.c, o.q, o.x0, o.iterations);
        if !o.h.is_empty() {
            spec = spec.with_tail(UniSeries::from_poly(o.h.clone()));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
name = "basic"

[set]
kind = "hypograph"
g = "x^2 + y^4"

[subspace]
span = [[3.0, 4.0, 0.0]]

[start]
u0 = [0.6, 0.8, 0.0]

[assert]
convex = true
"#;

    #[test]
    fn round_trip() {
        let c = Config::from_toml(BASIC).unwrap();
        let text = c.to_toml().unwrap();
        assert_eq!(Config::from_toml(&text).unwrap(), c);
        assert_eq!(c.to_toml().unwrap(), text);
    }

    #[test]
    fn builds_scenario() {
        let c = Config::from_toml(BASIC).unwrap();
        let s = c.scenario().unwrap();
        assert_eq!(s.subspace.dim(), 1);
        assert_eq!(s.max_iter, 100_000);
        assert!(s.asserts.convex && !s.asserts.nondegenerate);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_polys() {
        assert!(matches!(
            Config::from_toml("name = \"x\"\nbogus = 1\n"),
            Err(Error::Config(_))
        ));
        let bad = BASIC.replace("x^2 + y^4", "x^2 + ");
        let c = Config::from_toml(&bad).unwrap();
        assert!(matches!(c.convex_set(), Err(Error::Parse { .. })));
    }
}
