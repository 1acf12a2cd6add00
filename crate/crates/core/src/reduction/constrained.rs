// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use super::ep::{coadjoint_force, ep_integrate, solve_linear, EPTrajectory, Lagrangian};
use crate::algebra::{AlgebraElement, Basis, StructureConstants};
use crate::error::{Result, ZqocError};

/// Linear constraints f_k(ξ) = h(F_k, ξ)/h(F_k, F_k) = c_k.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSet {
    pub elements: Vec<AlgebraElement>,
    pub values: Vec<f64>,
    /// Row k holds the covector of f_k on basis components.
    phi: DMatrix<f64>,
}

fn covectors(basis: &Basis, elements: &[AlgebraElement]) -> Result<DMatrix<f64>> {
    let mut phi = DMatrix::zeros(elements.len(), basis.len());
    for (k, f) in elements.iter().enumerate() {
        let ff = basis.inner(f, f);
        if !(ff > 0.0) {
            return Err(ZqocError::InvalidArgument(format!("constraint element {k} is zero")));
        }
        for (d, b) in basis.elements().iter().enumerate() {
            phi[(k, d)] = basis.inner(f, b) / ff;
        }
    }
    if !elements.is_empty() {
        let rank = phi.clone().svd(false, false).rank(1e-10 * phi.amax());
        if rank < elements.len() {
            return Err(ZqocError::InvalidArgument(format!(
                "constraint elements are linearly dependent (rank {rank} of {})",
                elements.len()
            )));
        }
    }
    Ok(phi)
}

impl ConstraintSet {
    pub fn new(basis: &Basis, elements: Vec<AlgebraElement>, values: Vec<f64>) -> Result<Self> {
        if elements.len() != values.len() {
            return Err(ZqocError::DimensionMismatch {
                expected: elements.len(),
                found: values.len(),
            });
        }
        let phi = covectors(basis, &elements)?;
        Ok(Self { elements, values, phi })
    }

    /// Forbidden control directions: the control part ξ − W has no F_k
    /// component, so c_k = f_k(W).
    pub fn forbidden(basis: &Basis, elements: Vec<AlgebraElement>, drift: &AlgebraElement) -> Result<Self> {
        let phi = covectors(basis, &elements)?;
        let values = (&phi * basis.components(drift)).iter().copied().collect();
        Ok(Self { elements, values, phi })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn covectors(&self) -> &DMatrix<f64> {
        &self.phi
    }

    /// f_k(ξ) − c_k for each constraint.
    pub fn violation(&self, xi: &DVector<f64>) -> DVector<f64> {
        &self.phi * xi - DVector::from_column_slice(&self.values)
    }

    pub fn check_initial(&self, xi: &DVector<f64>) -> Result<()> {
        let v = self.violation(xi);
        match v.iter().position(|x| x.abs() > 1e-8) {
            Some(index) => Err(ZqocError::InconsistentInitialState {
                index,
                value: v[index] + self.values[index],
                expected: self.values[index],
            }),
            None => Ok(()),
        }
    }
}

/// (ξ̇, ω̇) for d/dt ∂Λ/∂ξ = −C^a_{bd}(∂Λ/∂ξ^a)ξ^b with Λ = ℓ + Σω_k(f_k − c_k)
/// and the constraints held fixed, from the saddle system
/// [[M, Φᵀ], [Φ, 0]]·(ξ̇, ω̇) = (R, 0).
pub fn constrained_ep_rhs(
    lag: &dyn Lagrangian,
    c: &StructureConstants,
    constraints: &ConstraintSet,
    xi: &DVector<f64>,
    omega: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>)> {
    let m = c.dim();
    let k = constraints.len();
    if xi.len() != m || omega.len() != k {
        return Err(ZqocError::DimensionMismatch {
            expected: m + k,
            found: xi.len() + omega.len(),
        });
    }
    let phi = constraints.covectors();
    let p = lag.momentum(xi)? + phi.transpose() * omega;
    let force = coadjoint_force(c, &p, xi);
    let mut system = DMatrix::zeros(m + k, m + k);
    system.view_mut((0, 0), (m, m)).copy_from(&lag.mass_matrix(xi)?);
    system.view_mut((0, m), (m, k)).copy_from(&phi.transpose());
    system.view_mut((m, 0), (k, m)).copy_from(phi);
    let mut rhs = DVector::zeros(m + k);
    rhs.rows_mut(0, m).copy_from(&force);
    let sol = solve_linear(system, &rhs)?;
    Ok((sol.rows(0, m).into_owned(), sol.rows(m, k).into_owned()))
}

/// RK4 integration of the constrained system from (ξ₀, ω₀).
pub fn constrained_ep_integrate(
    lag: &dyn Lagrangian,
    c: &StructureConstants,
    constraints: &ConstraintSet,
    xi0: &DVector<f64>,
    omega0: &DVector<f64>,
    t_end: f64,
    steps: usize,
) -> Result<EPTrajectory> {
    constraints.check_initial(xi0)?;
    let m = xi0.len();
    let k = omega0.len();
    let mut y0 = DVector::zeros(m + k);
    y0.rows_mut(0, m).copy_from(xi0);
    y0.rows_mut(m, k).copy_from(omega0);
    let traj = ep_integrate(
        |_, y| {
            let (dx, dw) = constrained_ep_rhs(
                lag,
                c,
                constraints,
                &y.rows(0, m).into_owned(),
                &y.rows(m, k).into_owned(),
            )?;
            let mut out = DVector::zeros(m + k);
            out.rows_mut(0, m).copy_from(&dx);
            out.rows_mut(m, k).copy_from(&dw);
            Ok(out)
        },
        &y0,
        t_end,
        steps,
    )?;
    let (states, multipliers) = traj
        .states
        .iter()
        .map(|y| (y.rows(0, m).into_owned(), y.rows(m, k).into_owned()))
        .unzip();
    Ok(EPTrajectory {
        times: traj.times,
        states,
        multipliers: Some(multipliers),
    })
}

/// The unit-speed circle about (0, 0, c) traced at angular rate ω:
/// ξ^x = A cos ωt − B sin ωt, ξ^y = A sin ωt + B cos ωt, ξ^z = c with B = √(1 − c² − A²).
pub fn su2_constrained_closed_form(c: f64, a: f64, omega: f64, t: f64) -> Result<[f64; 3]> {
    let rest = 1.0 - c * c - a * a;
    if rest < 0.0 {
        return Err(ZqocError::Domain(format!("c² + A² = {} exceeds 1", c * c + a * a)));
    }
    let b = rest.sqrt();
    let (s, co) = (omega * t).sin_cos();
    Ok([a * co - b * s, a * s + b * co, c])
}

/// Dimension of the Lie algebra generated by the allowed directions.
pub fn lie_closure_rank(allowed: &[AlgebraElement], basis: &Basis) -> usize {
    let mut span: Vec<DVector<f64>> = Vec::new();
    let mut elements: Vec<AlgebraElement> = Vec::new();
    let push = |e: &AlgebraElement, span: &mut Vec<DVector<f64>>, elements: &mut Vec<AlgebraElement>| {
        let mut v = basis.components(e);
        for s in span.iter() {
            let proj = s.dot(&v);
            v -= s * proj;
        }
        let n = v.norm();
        if n > 1e-9 {
            span.push(v / n);
            elements.push(e.clone());
            true
        } else {
            false
        }
    };
    for e in allowed {
        push(e, &mut span, &mut elements);
    }
    let mut start = 0;
    while start < elements.len() && span.len() < basis.len() {
        let end = elements.len();
        for i in start..end {
            for j in 0..i {
                let br = elements[i].bracket(&elements[j]);
                push(&br, &mut span, &mut elements);
            }
        }
        start = end;
    }
    span.len()
}
