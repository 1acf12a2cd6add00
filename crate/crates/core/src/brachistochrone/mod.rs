// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form time-optimal solutions for bi-invariant control constraints.

mod reference;
mod series;
mod solution;
mod time;

pub use reference::{reference_time_independent, ReferenceModel};
pub use series::bch_direction;
pub use solution::{
    constant_control_optimal, constraint_value, default_steps, propagate, uniform_grid, ControlSchedule,
    GeodesicSolution,
};
pub use time::{
    geodesic_direction, optimal_time, optimal_time_commuting, optimal_time_schatten, ClosedFormMethod, CommutingTime,
    GeodesicDirection, RootScan, TimeSolution,
};
