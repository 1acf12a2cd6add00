// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{CliError, SweepParam};
use crate::algebra::{pauli, AlgebraElement, CMatrix, ConstraintNorm};
use crate::brachistochrone::{optimal_time, reference_time_independent, ReferenceModel, RootScan};
use crate::error::ZqocError;
use crate::io::{fmt_num, write_atomic, ProblemConfig};

/// One sweep point. Missing times are NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub t_dep: f64,
    pub t_indep: f64,
    pub status: &'static str,
}

impl SweepRow {
    pub fn dep_le_indep(&self) -> bool {
        self.t_dep.is_finite() && self.t_indep.is_finite() && self.t_dep <= self.t_indep + equal_tol(self.t_indep)
    }

    pub fn equal(&self) -> bool {
        self.t_dep.is_finite()
            && self.t_indep.is_finite()
            && (self.t_dep - self.t_indep).abs() <= equal_tol(self.t_indep)
    }
}

fn equal_tol(t: f64) -> f64 {
    1e-6 * t.abs().max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    /// Parameters where the time-dependent time exceeds the constant-control time.
    pub violations: Vec<f64>,
    /// [min, max] of the parameters where both times agree.
    pub equality_interval: Option<[f64; 2]>,
    /// Whether the agreeing parameters form one contiguous run of grid points.
    pub contiguous: bool,
}

pub fn parse_range(range: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<f64> = range
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("--range {range:?}: {e}")))?;
    let [lo, hi, step] = parts[..] else {
        return Err(CliError::Usage(format!("--range {range:?}: expected lo:hi:step")));
    };
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Usage(format!("--range {range:?}: need lo ≤ hi and step > 0")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

fn drift_for(param: SweepParam, x: f64) -> crate::Result<AlgebraElement> {
    let h: CMatrix = match param {
        SweepParam::B => (pauli(1) + pauli(2)) * Complex64::new(x, 0.0),
        SweepParam::J => {
            let mut h = DMatrix::zeros(4, 4);
            for k in 1..=3 {
                h += pauli(k).kronecker(&pauli(k));
            }
            h * Complex64::new(x, 0.0)
        }
    };
    AlgebraElement::from_hamiltonian(&h)
}

fn reference_for(param: SweepParam, x: f64, kappa: f64) -> ReferenceModel {
    match param {
        SweepParam::B => ReferenceModel::SingleSpin {
            bx: x,
            by: x,
            d: 1.0 / (2.0 * kappa).sqrt(),
        },
        SweepParam::J => ReferenceModel::XXXChain { j: x },
    }
}

fn evaluate(
    param: SweepParam,
    x: f64,
    cfg: &ProblemConfig,
    h: &ConstraintNorm,
    kappa: f64,
    scan: &RootScan,
) -> SweepRow {
    let t_indep = reference_time_independent(reference_for(param, x, kappa)).unwrap_or(f64::NAN);
    let result = cfg
        .gate()
        .and_then(|gate| drift_for(param, x).and_then(|w| optimal_time(&w, &gate, h, scan)));
    let (t_dep, status) = match result {
        Ok(sol) => (sol.t_opt, "ok"),
        Err(ZqocError::StrongWind { .. }) => (f64::NAN, "strong-wind"),
        Err(ZqocError::NoRoot { .. }) => (f64::NAN, "no-root"),
        Err(_) => (f64::NAN, "error"),
    };
    SweepRow {
        param: x,
        t_dep,
        t_indep,
        status,
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ZQOC_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Usage(format!("ZQOC_THREADS={v:?} is not a thread count")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Io(e.to_string()))
}

pub fn summarize(rows: &[SweepRow]) -> SweepSummary {
    let violations = rows
        .iter()
        .filter(|r| r.t_dep.is_finite() && r.t_indep.is_finite() && !r.dep_le_indep())
        .map(|r| r.param)
        .collect();
    let equal: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].equal()).collect();
    let equality_interval = match (equal.first(), equal.last()) {
        (Some(&a), Some(&b)) => Some([rows[a].param, rows[b].param]),
        _ => None,
    };
    let contiguous = equal.windows(2).all(|w| w[1] == w[0] + 1);
    SweepSummary {
        points: rows.len(),
        violations,
        equality_interval,
        contiguous,
    }
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("param,t_dep,t_indep,dep_le_indep,status\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_num(r.param),
            fmt_num(r.t_dep),
            fmt_num(r.t_indep),
            r.dep_le_indep(),
            r.status
        ));
    }
    out
}

pub(super) fn sweep(
    config: &Path,
    param: SweepParam,
    range: &str,
    out: &Path,
    stdout: &mut dyn std::io::Write,
) -> Result<(), CliError> {
    let cfg = ProblemConfig::from_path(config)?;
    let h = cfg.constraint_norm()?;
    let ConstraintNorm::KillingMultiple { kappa } = h else {
        return Err(CliError::Usage("sweep needs a killing constraint".into()));
    };
    let n = match param {
        SweepParam::B => 2,
        SweepParam::J => 4,
    };
    if cfg.n != n {
        return Err(CliError::Usage(format!(
            "--param {param:?} needs n = {n}, config has n = {}",
            cfg.n
        )));
    }
    if param == SweepParam::J && (kappa - 1.0).abs() > 1e-12 {
        return Err(CliError::Usage("--param J needs kappa = 1".into()));
    }
    let values = parse_range(range)?;
    let scan = cfg.scan();
    let mut rows: Vec<SweepRow> = thread_pool()?.install(|| {
        values
            .par_iter()
            .map(|&x| evaluate(param, x, &cfg, &h, kappa, &scan))
            .collect()
    });
    rows.sort_by(|a, b| a.param.total_cmp(&b.param));
    write_atomic(out, &rows_to_csv(&rows))?;
    let summary = summarize(&rows);
    let mut text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    text.push('\n');
    stdout.write_all(text.as_bytes())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("0:0.2:0.1").unwrap().len(), 3);
        assert_eq!(parse_range("1:1:0.5").unwrap(), vec![1.0]);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
    }

    #[test]
    fn summary_intervals() {
        let row = |param, t_dep, t_indep| SweepRow {
            param,
            t_dep,
            t_indep,
            status: "ok",
        };
        let rows = [
            row(0.0, 1.0, 1.0),
            row(0.1, 1.0, 1.0),
            row(0.2, 0.9, 1.0),
            row(0.3, 1.2, 1.0),
        ];
        let s = summarize(&rows);
        assert_eq!(s.equality_interval, Some([0.0, 0.1]));
        assert!(s.contiguous);
        assert_eq!(s.violations, vec![0.3]);
        assert!(rows_to_csv(&rows).starts_with("param,t_dep"));
    }

    #[test]
    fn zero_coupling_matches_reference() {
        let cfg = ProblemConfig::from_json(
            r#"{"n":2,"drift":[[[0,0],[0,0]],[[0,0],[0,0]]],"gate":[[[0,0],[-1,0]],[[1,0],[0,0]]],
               "constraint":{"type":"killing","kappa":1.0}}"#,
        )
        .unwrap();
        let h = cfg.constraint_norm().unwrap();
        let r = evaluate(SweepParam::B, 0.0, &cfg, &h, 1.0, &cfg.scan());
        assert_eq!(r.status, "ok");
        assert!(r.equal(), "{r:?}");
    }
}
