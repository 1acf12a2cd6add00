// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use super::Metric;
use crate::algebra::{AlgebraElement, Basis, CMatrix, ConstraintNorm};
use crate::error::{Result, ZqocError};
use crate::tolerance::Tolerances;

/// Constraint norm F̌ plus the drift W = −iĤ₀ acting as wind.
#[derive(Debug, Clone, PartialEq)]
pub struct NavigationData {
    h: ConstraintNorm,
    drift: AlgebraElement,
    wind: f64,
}

impl NavigationData {
    /// Requires F̌(W) ≤ 1 − ε (for inner products, h(W,W) ≤ 1 − ε).
    pub fn new(h: ConstraintNorm, drift: AlgebraElement) -> Result<Self> {
        Self::with_tolerances(h, drift, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(h: ConstraintNorm, drift: AlgebraElement, tol: &Tolerances) -> Result<Self> {
        let wind = h.norm(&drift)?;
        let measure = if h.is_inner_product() { wind * wind } else { wind };
        if measure > 1.0 - tol.weak_wind {
            return Err(ZqocError::StrongWind {
                norm_sq: measure,
                eps: tol.weak_wind,
            });
        }
        Ok(Self { h, drift, wind })
    }

    /// Navigation data for a Hermitian, traceless drift Hamiltonian Ĥ₀.
    pub fn from_hamiltonian(h: ConstraintNorm, h0: &CMatrix) -> Result<Self> {
        Self::new(h, AlgebraElement::from_hamiltonian(h0)?)
    }

    pub fn constraint(&self) -> &ConstraintNorm {
        &self.h
    }

    /// W = −iĤ₀.
    pub fn drift(&self) -> &AlgebraElement {
        &self.drift
    }

    /// F̌(W).
    pub fn wind(&self) -> f64 {
        self.wind
    }

    pub fn dim(&self) -> usize {
        self.drift.dim()
    }
}

/// Randers metric F(v) = √(vᵀαv) + β·v solving the navigation problem for an
/// inner-product constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct RandersData {
    pub lambda: f64,
    pub alpha: DMatrix<f64>,
    pub beta: DVector<f64>,
    basis: Basis,
}

pub fn build_randers(nav: &NavigationData, basis: &Basis) -> Result<RandersData> {
    let h = nav.constraint();
    if !h.is_inner_product() {
        return Err(ZqocError::InvalidVariant(
            "Randers data requires an inner-product constraint",
        ));
    }
    if basis.dim() != nav.dim() {
        return Err(ZqocError::DimensionMismatch {
            expected: nav.dim(),
            found: basis.dim(),
        });
    }
    let w = nav.drift();
    let lambda = 1.0 - h.inner(w, w)?;
    let m = basis.len();
    let b = basis.elements();
    let beta = DVector::from_iterator(
        m,
        b.iter()
            .map(|bd| h.inner(bd, w).map(|v| -v / lambda))
            .collect::<Result<Vec<_>>>()?,
    );
    let mut alpha = DMatrix::zeros(m, m);
    for d in 0..m {
        for e in d..m {
            let v = h.inner(&b[d], &b[e])? / lambda + beta[d] * beta[e];
            alpha[(d, e)] = v;
            alpha[(e, d)] = v;
        }
    }
    Ok(RandersData {
        lambda,
        alpha,
        beta,
        basis: basis.clone(),
    })
}

impl RandersData {
    /// √(βᵀα⁻¹β); strictly below one for a weak wind.
    pub fn beta_alpha_norm(&self) -> Result<f64> {
        let chol = self
            .alpha
            .clone()
            .cholesky()
            .ok_or_else(|| ZqocError::Numerical("Randers α is not positive definite".into()))?;
        Ok(self.beta.dot(&chol.solve(&self.beta)).sqrt())
    }

    /// √(xᵀαx) + β·x on component vectors.
    pub fn norm_components(&self, x: &DVector<f64>) -> f64 {
        x.dot(&(&self.alpha * x)).max(0.0).sqrt() + self.beta.dot(x)
    }

    /// Momentum ∂(F²/2)/∂x = F·(αx/√(xᵀαx) + β).
    pub fn momentum(&self, x: &DVector<f64>) -> Result<DVector<f64>> {
        let ax = &self.alpha * x;
        let a = x.dot(&ax).sqrt();
        if !(a > 0.0) {
            return Err(ZqocError::Domain("Randers momentum undefined at zero velocity".into()));
        }
        let f = a + self.beta.dot(x);
        Ok((ax / a + &self.beta) * f)
    }
}

impl Metric for RandersData {
    fn basis(&self) -> &Basis {
        &self.basis
    }

    fn eval_components(&self, x: &DVector<f64>) -> Result<f64> {
        Ok(self.norm_components(x))
    }
}

pub fn randers_norm(f: &RandersData, a: &AlgebraElement) -> f64 {
    f.norm_components(&f.basis.components(a))
}
