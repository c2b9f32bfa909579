use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::config::Config;
use super::predict::{predict, PredictReport};
use crate::apm::{run_apm, RecordSchedule, Termination};
use crate::error::{Error, Result};
use crate::estimate::{check_limit_product, detect_linear, fit_rate, fit_rate_range, RateEstimate};
use crate::rates::RateKind;
use crate::region::{
    classify_point, classify_scan, trace_partition_boundary, write_labels_csv, GridLabel,
};

/// Result of one subcommand on one scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: String,
    /// False only for a failed verification.
    pub pass: bool,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Self { report, pass: true }
    }
}

/// Overrides from the command line.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Tolerances {
    pub exponent: Option<f64>,
    pub product: Option<f64>,
}

fn create(out: &Path, cfg: &Config, suffix: &str) -> Result<(PathBuf, BufWriter<File>)> {
    std::fs::create_dir_all(out)?;
    let path = out.join(format!("{}.{suffix}", cfg.name));
    let f = File::create(&path)?;
    Ok((path, BufWriter::new(f)))
}

pub fn cmd_simulate(cfg: &Config, out: &Path) -> Result<Outcome> {
    let trace = run_apm(&cfg.scenario()?)?;
    let (path, w) = create(out, cfg, "trace.csv")?;
    trace.write_csv(w)?;
    let last = trace.last().expect("a trace holds at least one record");
    let terminated = match trace.terminated {
        Termination::MaxIter => "max_iter",
        Termination::BelowFloor => "below_floor",
    };
    Ok(Outcome::ok(format!(
        "trace = {}\nlast_k = {}\nlast_norm_u = {:.16e}\nterminated = {terminated}\n",
        path.display(),
        last.k,
        last.norm_u
    )))
}

pub fn cmd_predict(cfg: &Config, out: &Path) -> Result<Outcome> {
    let report = predict(cfg)?.to_kv();
    let (_, mut w) = create(out, cfg, "predict.txt")?;
    w.write_all(report.as_bytes())?;
    Ok(Outcome::ok(report))
}

/// Prediction with the `[expect]` overrides applied.
fn expected(cfg: &Config) -> Result<PredictReport> {
    let mut rep = predict(cfg)?;
    if let Some(l) = cfg.expected_lambda()? {
        rep.prediction.lambda = l;
    }
    if let Some(c) = cfg.expect.as_ref().and_then(|e| e.limit_constant) {
        rep.prediction.limit_constant = Some(c);
    }
    Ok(rep)
}

pub fn cmd_verify(cfg: &Config, out: &Path, tol: Tolerances) -> Result<Outcome> {
    let rep = expected(cfg)?;
    let pred = &rep.prediction;
    let trace = run_apm(&cfg.scenario()?)?;
    let (_, w) = create(out, cfg, "trace.csv")?;
    trace.write_csv(w)?;

    let tol_exponent = tol.exponent.unwrap_or(cfg.verify.tol_exponent);
    let band = match tol.product {
        Some(t) => [1.0 - t, 1.0 + t],
        None => cfg.verify.product_band,
    };
    let mut report = rep.to_kv();
    let mut failures: Vec<String> = Vec::new();

    if pred.kind == RateKind::Linear {
        match detect_linear(&trace) {
            Some(rho) => {
                let _ = writeln!(report, "linear_ratio = {rho:.16e}");
            }
            None => failures.push("no geometric decay detected".into()),
        }
    } else {
        let fit: Result<RateEstimate> = match cfg.verify.fit_window {
            Some([lo, hi]) => fit_rate_range(&trace, lo, hi),
            None => fit_rate(&trace, cfg.verify.tail_fraction),
        };
        match fit {
            Ok(est) => {
                report += &est.to_kv();
                let lambda = pred.lambda_f64();
                if (est.fitted_exponent - lambda).abs() > tol_exponent {
                    failures.push(format!(
                        "fitted exponent {:.6} outside {lambda:.6} ± {tol_exponent}",
                        est.fitted_exponent
                    ));
                }
            }
            Err(Error::InsufficientData { needed, got }) => {
                failures.push(format!("too few records to fit ({got} of {needed})"));
            }
            Err(e) => return Err(e),
        }
        if pred.kind == RateKind::Exact && pred.limit_constant.is_some() {
            let (k, p) = *check_limit_product(&trace, pred)?
                .last()
                .ok_or(Error::InsufficientData { needed: 1, got: 0 })?;
            let _ = writeln!(report, "product_k = {k}\nproduct = {p:.16e}");
            if !(band[0]..=band[1]).contains(&p) {
                failures.push(format!("product {p:.6} outside [{}, {}]", band[0], band[1]));
            }
        }
    }
    let pass = failures.is_empty();
    let _ = writeln!(report, "tol_exponent = {tol_exponent}");
    let _ = writeln!(report, "product_band = {}, {}", band[0], band[1]);
    for f in &failures {
        let _ = writeln!(report, "failure = {f}");
    }
    let _ = writeln!(report, "pass = {pass}");
    let (_, mut w) = create(out, cfg, "verify.txt")?;
    w.write_all(report.as_bytes())?;
    Ok(Outcome { report, pass })
}

fn labels(cfg: &Config) -> Result<Vec<GridLabel>> {
    let a = cfg
        .two_poly()?
        .ok_or_else(|| Error::Config("region labels need a two_poly set".into()))?;
    let opts = cfg.solver();
    Ok(match cfg.grid()? {
        Some(grid) => classify_scan(&a, &grid, &opts),
        None => cfg
            .classify
            .as_ref()
            .and_then(|c| c.points.as_ref())
            .expect("grid() returns None only for explicit points")
            .iter()
            .map(|&point| GridLabel {
                point,
                label: classify_point(&a, &point, &opts),
            })
            .collect(),
    })
}

pub fn cmd_classify(cfg: &Config, out: &Path) -> Result<Outcome> {
    let l = labels(cfg)?;
    let (path, w) = create(out, cfg, "labels.csv")?;
    write_labels_csv(&l, w)?;
    Ok(Outcome::ok(format!("labels = {}\npoints = {}\n", path.display(), l.len())))
}

pub fn cmd_partition(cfg: &Config, out: &Path) -> Result<Outcome> {
    let a = cfg
        .two_poly()?
        .ok_or_else(|| Error::Config("partition needs a two_poly set".into()))?;
    let p = cfg
        .partition
        .as_ref()
        .ok_or_else(|| Error::Config(format!("scenario {:?} lacks [partition]", cfg.name)))?;
    let mut report = String::new();
    for which in [1, 2] {
        let line = trace_partition_boundary(&a, which, (p.window[0], p.window[1]), p.samples)?;
        let (path, w) = create(out, cfg, &format!("boundary{which}.csv"))?;
        line.write_csv(w)?;
        let _ = writeln!(
            report,
            "boundary{which} = {}\nboundary{which}_points = {}\nboundary{which}_skipped = {}",
            path.display(),
            line.points.len(),
            line.skipped.len()
        );
    }
    if cfg.classify.is_some() {
        report += &cmd_classify(cfg, out)?.report;
    }
    Ok(Outcome::ok(report))
}

pub fn cmd_oracle(cfg: &Config, out: &Path) -> Result<Outcome> {
    let spec = cfg.recursion()?;
    let xs = crate::apm::run_recursion_oracle(&spec)?;
    let q = spec.q as f64;
    let scale = (q * spec.c).powf(1.0 / q);
    let schedule = RecordSchedule {
        points_per_octave: cfg.run.points_per_octave,
    };
    let (path, mut w) = create(out, cfg, "oracle.csv")?;
    writeln!(w, "k,x_k,scaled")?;
    let last = xs.len() - 1;
    for (k, x) in xs.iter().enumerate() {
        if schedule.records(k) || k == last {
            let scaled = scale * (k as f64).powf(1.0 / q) * x;
            writeln!(w, "{k},{x:.16e},{scaled:.16e}")?;
        }
    }
    let scaled_end = scale * (last as f64).powf(1.0 / q) * xs[last];
    Ok(Outcome::ok(format!(
        "oracle = {}\nlast_k = {last}\nscaled_at_end = {scaled_end:.16e}\n",
        path.display()
    )))
}

