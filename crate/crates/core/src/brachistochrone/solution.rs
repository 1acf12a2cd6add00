// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;

use super::time::{geodesic_direction, optimal_time, optimal_time_schatten, RootScan};
use crate::algebra::{expm, AlgebraElement, Basis, ConstraintNorm, GroupElement};
use crate::error::{Result, ZqocError};

/// Time-optimal geodesic U_t = exp(tW)·exp(t·iD̂) for a bi-invariant constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicSolution {
    pub t_opt: f64,
    /// iD̂.
    pub direction: AlgebraElement,
    /// W = −iĤ₀.
    pub drift: AlgebraElement,
    pub gate: GroupElement,
    pub constraint: ConstraintNorm,
    pub roots: Vec<f64>,
    pub branch_cut: bool,
}

impl GeodesicSolution {
    /// Solves for T_opt (Killing or Schatten constraint) and the direction iD̂.
    pub fn solve(
        drift: &AlgebraElement,
        gate: &GroupElement,
        constraint: &ConstraintNorm,
        scan: &RootScan,
    ) -> Result<Self> {
        let times = match constraint {
            ConstraintNorm::KillingMultiple { .. } => optimal_time(drift, gate, constraint, scan)?,
            ConstraintNorm::SchattenP { .. } => optimal_time_schatten(drift, gate, constraint, scan)?,
            ConstraintNorm::Gram(_) => {
                return Err(ZqocError::InvalidVariant(
                    "closed-form geodesics need a bi-invariant constraint",
                ))
            }
        };
        let (direction, branch_cut) = if times.t_opt > 0.0 {
            let d = geodesic_direction(drift, gate, times.t_opt)?;
            (d.direction, d.branch_cut)
        } else {
            (AlgebraElement::zero(drift.dim()), false)
        };
        Ok(Self {
            t_opt: times.t_opt,
            direction,
            drift: drift.clone(),
            gate: gate.clone(),
            constraint: constraint.clone(),
            roots: times.roots,
            branch_cut,
        })
    }

    fn check_t(&self, t: f64) -> Result<()> {
        let slack = 1e-12 * self.t_opt.max(1.0);
        if !(t >= -slack && t <= self.t_opt + slack) {
            return Err(ZqocError::OutOfRange { t, t_max: self.t_opt });
        }
        Ok(())
    }

    pub fn trajectory_at(&self, t: f64) -> Result<GroupElement> {
        self.check_t(t)?;
        Ok(&expm(&self.drift.scale(t))? * &expm(&self.direction.scale(t))?)
    }

    /// −iĤ_c(t) = exp(tW)·iD̂·exp(−tW).
    pub fn control_hamiltonian_at(&self, t: f64) -> Result<AlgebraElement> {
        self.check_t(t)?;
        Ok(self.direction.conjugate(&expm(&self.drift.scale(t))?))
    }

    /// Total right-trivialized velocity W − iĤ_c(t).
    pub fn velocity_at(&self, t: f64) -> Result<AlgebraElement> {
        Ok(&self.drift + &self.control_hamiltonian_at(t)?)
    }

    /// ‖[iD̂, W]‖_F: zero exactly when the optimal control is constant.
    pub fn direction_commutator(&self) -> f64 {
        self.direction.bracket(&self.drift).frobenius_norm()
    }

    pub fn control_fields(&self, basis: &Basis, grid: &[f64]) -> Result<ControlSchedule> {
        let mut hamiltonians = Vec::with_capacity(grid.len());
        let mut fields = Vec::with_capacity(grid.len());
        let mut constraint_check = Vec::with_capacity(grid.len());
        for &t in grid {
            let hc = self.control_hamiltonian_at(t)?;
            fields.push(basis.components(&hc));
            constraint_check.push(constraint_value(&self.constraint, &hc)?);
            hamiltonians.push(hc);
        }
        Ok(ControlSchedule {
            times: grid.to_vec(),
            hamiltonians,
            fields,
            labels: basis.labels().to_vec(),
            constraint_check,
        })
    }
}

/// h(−iĤ_c, −iĤ_c) for inner products, F̌(−iĤ_c) for Schatten norms; one at saturation.
pub fn constraint_value(h: &ConstraintNorm, hc: &AlgebraElement) -> Result<f64> {
    match h {
        ConstraintNorm::SchattenP { .. } => h.norm(hc),
        _ => h.inner(hc, hc),
    }
}

/// Sampled optimal control with its field coefficients f_k(t).
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule {
    pub times: Vec<f64>,
    /// −iĤ_c(t_j).
    pub hamiltonians: Vec<AlgebraElement>,
    /// f_k(t_j) = h(−iĤ_c(t_j), B_k)/h(B_k, B_k).
    pub fields: Vec<DVector<f64>>,
    pub labels: Vec<String>,
    /// Constraint value at each sample (one at saturation).
    pub constraint_check: Vec<f64>,
}

impl ControlSchedule {
    pub fn max_constraint_violation(&self) -> f64 {
        self.constraint_check
            .iter()
            .fold(0.0_f64, |m, v| m.max((v - 1.0).abs()))
    }
}

/// N + 1 equally spaced points on [0, t].
pub fn uniform_grid(t: f64, intervals: usize) -> Vec<f64> {
    let n = intervals.max(1);
    (0..=n).map(|k| t * k as f64 / n as f64).collect()
}

/// max(10⁴, ⌈T/10⁻³⌉).
pub fn default_steps(t: f64) -> usize {
    ((t / 1e-3).ceil() as usize).max(10_000)
}

/// Time-ordered exponential of ξ(t) = −iĤ(t) by midpoint exponentials.
pub fn propagate<F>(xi: F, t: f64, steps: usize) -> Result<GroupElement>
where
    F: Fn(f64) -> Result<AlgebraElement>,
{
    if steps == 0 {
        return Err(ZqocError::InvalidArgument("propagate needs at least one step".into()));
    }
    let first = xi(0.0)?;
    let mut u = GroupElement::identity(first.dim());
    if t == 0.0 {
        return Ok(u);
    }
    let dt = t / steps as f64;
    for k in 0..steps {
        let mid = (k as f64 + 0.5) * dt;
        u = &expm(&xi(mid)?.scale(dt))? * &u;
    }
    Ok(u)
}

/// Whether constant controls are optimal: ‖[Ĥ₀, Ô]‖_F ≤ 1e−10.
pub fn constant_control_optimal(drift: &AlgebraElement, gate: &GroupElement) -> bool {
    let h0 = drift.hamiltonian();
    let o = gate.matrix();
    (&h0 * o - o * &h0).norm() <= crate::tolerance::Tolerances::DEFAULT.commute
}
