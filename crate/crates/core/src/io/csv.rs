// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use nalgebra::DVector;

use crate::brachistochrone::ControlSchedule;
use crate::error::{Result, ZqocError};

/// Fixed 17-significant-digit formatting for every number written.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes via a sibling temporary file and a rename, so no partial file is
/// left behind on failure.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

fn row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    let cells: Vec<String> = cells.into_iter().collect();
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// `t,f_<label>…,constraint_check`.
pub fn schedule_to_csv(s: &ControlSchedule) -> String {
    let mut out = String::new();
    row(
        &mut out,
        std::iter::once("t".to_string())
            .chain(s.labels.iter().map(|l| format!("f_{l}")))
            .chain(std::iter::once("constraint_check".to_string())),
    );
    for ((t, f), chk) in s.times.iter().zip(&s.fields).zip(&s.constraint_check) {
        row(
            &mut out,
            std::iter::once(fmt_num(*t))
                .chain(f.iter().map(|&x| fmt_num(x)))
                .chain(std::iter::once(fmt_num(*chk))),
        );
    }
    out
}

/// A parsed numeric table with its header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn parse_table(text: &str) -> Result<Table> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| ZqocError::InvalidArgument("CSV has no header".into()))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells = line
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|e| ZqocError::InvalidArgument(format!("CSV row {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        if cells.len() != header.len() {
            return Err(ZqocError::InvalidArgument(format!(
                "CSV row {} has {} cells, header has {}",
                i + 1,
                cells.len(),
                header.len()
            )));
        }
        rows.push(cells);
    }
    Ok(Table { header, rows })
}

/// Times and field vectors from a schedule CSV whose field columns must match
/// `labels` in order; the trailing constraint_check column is optional.
pub fn schedule_from_csv(text: &str, labels: &[String]) -> Result<(Vec<f64>, Vec<DVector<f64>>)> {
    let table = parse_table(text)?;
    let expected: Vec<String> = std::iter::once("t".to_string())
        .chain(labels.iter().map(|l| format!("f_{l}")))
        .collect();
    let h = &table.header;
    let matches = h.len() >= expected.len()
        && h[..expected.len()] == expected[..]
        && (h.len() == expected.len() || (h.len() == expected.len() + 1 && h[expected.len()] == "constraint_check"));
    if !matches {
        return Err(ZqocError::InvalidArgument(format!(
            "schedule header {:?} does not match basis columns {:?}",
            h, expected
        )));
    }
    let m = labels.len();
    let times = table.rows.iter().map(|r| r[0]).collect();
    let fields = table
        .rows
        .iter()
        .map(|r| DVector::from_column_slice(&r[1..=m]))
        .collect();
    Ok((times, fields))
}

/// Generic numeric CSV with a header.
pub fn table_to_csv(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", header.join(","));
    for r in rows {
        row(&mut out, r.iter().map(|&x| fmt_num(x)));
    }
    out
}
