// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON problem configs, CSV tables and JSON reports.

mod config;
mod csv;
mod report;

pub use config::{
    matrix_from_json, matrix_to_json, ConstraintConfig, EpConfig, MatrixJson, ProblemConfig, SolverConfig,
};
pub use csv::{fmt_num, parse_table, schedule_from_csv, schedule_to_csv, table_to_csv, write_atomic, Table};
pub use report::Report;
