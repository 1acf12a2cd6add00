// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use crate::algebra::{expm, Basis, GroupElement, StructureConstants};
use crate::error::{Result, ZqocError};
use crate::navigation::RandersData;

/// A right-invariant Lagrangian ℓ(ξ) on basis components.
pub trait Lagrangian: Send + Sync {
    fn dim(&self) -> usize;

    /// m_d = ∂ℓ/∂ξ^d.
    fn momentum(&self, xi: &DVector<f64>) -> Result<DVector<f64>>;

    /// M_dk = ∂m_d/∂ξ^k.
    fn mass_matrix(&self, xi: &DVector<f64>) -> Result<DMatrix<f64>>;

    /// √(2ℓ): the speed whose conservation the flow should respect.
    fn speed(&self, xi: &DVector<f64>) -> f64;
}

/// ℓ = ½ ξᵀGξ.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannianLagrangian {
    gram: DMatrix<f64>,
}

impl RiemannianLagrangian {
    pub fn new(gram: DMatrix<f64>) -> Result<Self> {
        if gram.nrows() != gram.ncols() {
            return Err(ZqocError::DimensionMismatch {
                expected: gram.nrows(),
                found: gram.ncols(),
            });
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }
}

impl Lagrangian for RiemannianLagrangian {
    fn dim(&self) -> usize {
        self.gram.nrows()
    }

    fn momentum(&self, xi: &DVector<f64>) -> Result<DVector<f64>> {
        Ok(&self.gram * xi)
    }

    fn mass_matrix(&self, _xi: &DVector<f64>) -> Result<DMatrix<f64>> {
        Ok(self.gram.clone())
    }

    fn speed(&self, xi: &DVector<f64>) -> f64 {
        xi.dot(&(&self.gram * xi)).max(0.0).sqrt()
    }
}

/// Step of the central difference used for the Randers mass matrix.
pub const MASS_FD_STEP: f64 = 1e-6;

impl Lagrangian for RandersData {
    fn dim(&self) -> usize {
        self.beta.len()
    }

    fn momentum(&self, xi: &DVector<f64>) -> Result<DVector<f64>> {
        RandersData::momentum(self, xi)
    }

    fn mass_matrix(&self, xi: &DVector<f64>) -> Result<DMatrix<f64>> {
        let m = xi.len();
        let mut mass = DMatrix::zeros(m, m);
        for k in 0..m {
            let mut plus = xi.clone();
            let mut minus = xi.clone();
            plus[k] += MASS_FD_STEP;
            minus[k] -= MASS_FD_STEP;
            let col =
                (RandersData::momentum(self, &plus)? - RandersData::momentum(self, &minus)?) / (2.0 * MASS_FD_STEP);
            mass.set_column(k, &col);
        }
        Ok((&mass + mass.transpose()) * 0.5)
    }

    fn speed(&self, xi: &DVector<f64>) -> f64 {
        self.norm_components(xi)
    }
}

/// R_d = −C^a_{bd} p_a ξ^b.
pub(crate) fn coadjoint_force(c: &StructureConstants, p: &DVector<f64>, xi: &DVector<f64>) -> DVector<f64> {
    let m = c.dim();
    DVector::from_fn(m, |d, _| {
        let mut s = 0.0;
        for a in 0..m {
            if p[a] == 0.0 {
                continue;
            }
            for b in 0..m {
                s += c.get(a, b, d) * p[a] * xi[b];
            }
        }
        -s
    })
}

pub(crate) fn solve_linear(a: DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    let size = a.nrows();
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let rank = a.clone().svd(false, false).rank(1e-12 * scale);
    if rank < size {
        return Err(ZqocError::SingularSystem { size, rank });
    }
    a.lu().solve(rhs).ok_or(ZqocError::SingularSystem { size, rank })
}

fn check_len(c: &StructureConstants, xi: &DVector<f64>) -> Result<()> {
    if xi.len() != c.dim() {
        return Err(ZqocError::DimensionMismatch {
            expected: c.dim(),
            found: xi.len(),
        });
    }
    Ok(())
}

/// ξ̇ solving M(ξ)·ξ̇ = −C^a_{bd} m_a ξ^b for any Lagrangian.
pub fn ep_rhs(lag: &dyn Lagrangian, c: &StructureConstants, xi: &DVector<f64>) -> Result<DVector<f64>> {
    check_len(c, xi)?;
    let p = lag.momentum(xi)?;
    solve_linear(lag.mass_matrix(xi)?, &coadjoint_force(c, &p, xi))
}

/// ξ̇^k = −C^a_{bd} h^{kd} h_{ai} ξ^i ξ^b.
pub fn ep_rhs_riemannian(gram: &DMatrix<f64>, c: &StructureConstants, xi: &DVector<f64>) -> Result<DVector<f64>> {
    ep_rhs(&RiemannianLagrangian::new(gram.clone())?, c, xi)
}

/// EP flow of ℓ = F²/2 for a Randers metric.
pub fn ep_rhs_randers(f: &RandersData, c: &StructureConstants, xi: &DVector<f64>) -> Result<DVector<f64>> {
    ep_rhs(f, c, xi)
}

/// States of an EP integration on a fixed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EPTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
    /// Multipliers ω_k per step for constrained flows.
    pub multipliers: Option<Vec<DVector<f64>>>,
}

/// Fixed-step classical RK4 from t = 0 to `t_end` (which may be negative).
pub fn ep_integrate<F>(rhs: F, xi0: &DVector<f64>, t_end: f64, steps: usize) -> Result<EPTrajectory>
where
    F: Fn(f64, &DVector<f64>) -> Result<DVector<f64>>,
{
    if steps == 0 {
        return Err(ZqocError::InvalidArgument("integration needs at least one step".into()));
    }
    let h = t_end / steps as f64;
    let wrap = |step: usize| {
        move |e: ZqocError| ZqocError::Integration {
            step,
            source: Box::new(e),
        }
    };
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut y = xi0.clone();
    times.push(0.0);
    states.push(y.clone());
    for k in 0..steps {
        let t = k as f64 * h;
        let k1 = rhs(t, &y).map_err(wrap(k))?;
        let k2 = rhs(t + 0.5 * h, &(&y + &k1 * (0.5 * h))).map_err(wrap(k))?;
        let k3 = rhs(t + 0.5 * h, &(&y + &k2 * (0.5 * h))).map_err(wrap(k))?;
        let k4 = rhs(t + h, &(&y + &k3 * h)).map_err(wrap(k))?;
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        times.push((k + 1) as f64 * h);
        states.push(y.clone());
    }
    Ok(EPTrajectory {
        times,
        states,
        multipliers: None,
    })
}

/// Solves U̇ = ξ(t)U with U(0) = I by midpoint exponentials on the stored grid.
pub fn reconstruct_group(traj: &EPTrajectory, basis: &Basis) -> Result<Vec<GroupElement>> {
    let mut u = GroupElement::identity(basis.dim());
    let mut out = Vec::with_capacity(traj.states.len());
    out.push(u.clone());
    for k in 1..traj.states.len() {
        let dt = traj.times[k] - traj.times[k - 1];
        let mid = (&traj.states[k - 1] + &traj.states[k]) * 0.5;
        u = &expm(&basis.from_components(&mid).scale(dt))? * &u;
        out.push(u.clone());
    }
    Ok(out)
}

/// ‖U_T − Ô‖_F for the reconstructed endpoint.
pub fn endpoint_residual(traj: &EPTrajectory, basis: &Basis, gate: &GroupElement) -> Result<f64> {
    let path = reconstruct_group(traj, basis)?;
    Ok(path.last().map_or(f64::INFINITY, |u| u.distance(gate)))
}
