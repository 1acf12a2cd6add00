// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

/// Summary written next to CLI outputs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(rename = "T_opt", skip_serializing_if = "Option::is_none")]
    pub t_opt: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endpoint_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_max_violation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_speed_max_violation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traversal_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant_control_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_cut: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub propagation_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub outputs: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
