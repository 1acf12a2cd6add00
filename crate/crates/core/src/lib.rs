// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-optimal gate synthesis for drift-plus-control quantum systems with a
//! norm-bounded control Hamiltonian, posed as Zermelo navigation on SU(n).

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod brachistochrone;
pub mod cli;
pub mod error;
pub mod io;
pub mod navigation;
pub mod reduction;
pub mod tolerance;

pub use error::{Result, ZqocError};
pub use tolerance::Tolerances;
