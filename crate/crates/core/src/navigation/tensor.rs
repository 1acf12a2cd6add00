// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};

use super::Metric;
use crate::algebra::AlgebraElement;
use crate::error::{Result, ZqocError};

/// g_X(u, v) = ½ ∂²/∂s∂t F²(X + su + tv) at 0, over basis directions, by
/// central differences with step 1e−5·max(1, ‖x‖).
pub fn fundamental_tensor(metric: &dyn Metric, x: &AlgebraElement) -> Result<DMatrix<f64>> {
    fundamental_tensor_components(metric, &metric.basis().components(x))
}

pub fn fundamental_tensor_components(metric: &dyn Metric, x: &DVector<f64>) -> Result<DMatrix<f64>> {
    let norm = x.norm();
    if norm < 1e-8 {
        return Err(ZqocError::Domain(format!(
            "fundamental tensor undefined near zero (‖X‖ = {norm:.3e})"
        )));
    }
    let m = x.len();
    let step = 1e-5 * norm.max(1.0);
    let f2 = |dx: &[(usize, f64)]| -> Result<f64> {
        let mut y = x.clone();
        for &(i, d) in dx {
            y[i] += d;
        }
        let v = metric.eval_components(&y)?;
        Ok(v * v)
    };
    let mut g = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let pp = f2(&[(i, step), (j, step)])?;
            let pm = f2(&[(i, step), (j, -step)])?;
            let mp = f2(&[(i, -step), (j, step)])?;
            let mm = f2(&[(i, -step), (j, -step)])?;
            let v = 0.5 * (pp - pm - mp + mm) / (4.0 * step * step);
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicVectorCheck {
    pub is_geodesic: bool,
    /// g_X(X, [X, B_k]) for each basis element.
    pub residuals: Vec<f64>,
}

impl GeodesicVectorCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()))
    }
}

/// Tests g_X(X, [X, B_k]) = 0 for all k, i.e. whether exp(tX) is a geodesic.
pub fn is_geodesic_vector(metric: &dyn Metric, x: &AlgebraElement, tol: f64) -> Result<GeodesicVectorCheck> {
    let basis = metric.basis();
    let xc = basis.components(x);
    let g = fundamental_tensor_components(metric, &xc)?;
    let gx = &g * &xc;
    let residuals: Vec<f64> = basis
        .elements()
        .iter()
        .map(|b| gx.dot(&basis.components(&x.bracket(b))))
        .collect();
    let is_geodesic = residuals.iter().all(|r| r.abs() <= tol);
    Ok(GeodesicVectorCheck { is_geodesic, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::c;
    use crate::algebra::{orthonormal_basis, pauli, BasisKind, ConstraintNorm};
    use crate::navigation::{build_randers, NavigationData};

    #[test]
    fn riemannian_tensor_is_alpha() {
        let h = ConstraintNorm::killing(1.0).unwrap();
        let nav = NavigationData::new(h.clone(), AlgebraElement::zero(2)).unwrap();
        let f = build_randers(&nav, &orthonormal_basis(2, &h, BasisKind::GellMann).unwrap()).unwrap();
        let x = AlgebraElement::from_hamiltonian(&(pauli(1) * c(0.4) + pauli(2) * c(-0.1))).unwrap();
        let g = fundamental_tensor(&f, &x).unwrap();
        assert!((g - &f.alpha).amax() < 1e-5);
    }

    #[test]
    fn commuting_vector_is_geodesic_and_generic_is_not() {
        let h = ConstraintNorm::killing(1.0).unwrap();
        let nav = NavigationData::from_hamiltonian(h.clone(), &(pauli(3) * c(0.25))).unwrap();
        let f = build_randers(&nav, &orthonormal_basis(2, &h, BasisKind::GellMann).unwrap()).unwrap();
        let x = AlgebraElement::from_hamiltonian(&(pauli(3) * c(0.9))).unwrap();
        assert!(is_geodesic_vector(&f, &x, 1e-5).unwrap().is_geodesic);
        let y = AlgebraElement::from_hamiltonian(&(pauli(1) * c(0.5) + pauli(3) * c(0.4))).unwrap();
        let check = is_geodesic_vector(&f, &y, 1e-5).unwrap();
        assert!(!check.is_geodesic, "residual {}", check.max_residual());
    }

    #[test]
    fn rejects_tiny_x() {
        let h = ConstraintNorm::killing(1.0).unwrap();
        let nav = NavigationData::new(h.clone(), AlgebraElement::zero(2)).unwrap();
        let f = build_randers(&nav, &orthonormal_basis(2, &h, BasisKind::GellMann).unwrap()).unwrap();
        assert!(fundamental_tensor(&f, &AlgebraElement::zero(2)).is_err());
    }
}
