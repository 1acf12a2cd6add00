// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Euler–Poincaré equations for right-invariant Lagrangians on su(n), with
//! optional linear constraints enforced by Lagrange multipliers.

mod constrained;
mod ep;

pub use constrained::{
    constrained_ep_integrate, constrained_ep_rhs, lie_closure_rank, su2_constrained_closed_form, ConstraintSet,
};
pub use ep::{
    endpoint_residual, ep_integrate, ep_rhs, ep_rhs_randers, ep_rhs_riemannian, reconstruct_group, EPTrajectory,
    Lagrangian, RiemannianLagrangian, MASS_FD_STEP,
};
