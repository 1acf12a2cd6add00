// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix exponential and logarithm on SU(n), and phase removal onto SU(n).
//!
//! Both functions work from Hermitian eigendecompositions, which keeps the
//! results exactly unitary / anti-Hermitian up to rounding and gives
//! orthonormal eigenvectors even for degenerate spectra.

use std::f64::consts::PI;

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;

use super::element::{c, unitarity_deviation, AlgebraElement, CMatrix, GroupElement, I};
use crate::error::{Result, ZqocError};
use crate::tolerance::Tolerances;

/// Eigen-decomposition of a Hermitian matrix; the input is symmetrized first.
pub(crate) fn hermitian_eigen(h: &CMatrix) -> Result<(DVector<f64>, CMatrix)> {
    let sym = (h + h.adjoint()) * c(0.5);
    let scale = sym.norm();
    SymmetricEigen::try_new(sym, f64::EPSILON, 10_000)
        .map(|e| (e.eigenvalues, e.eigenvectors))
        .ok_or_else(|| {
            ZqocError::Numerical(format!(
                "Hermitian eigendecomposition did not converge (‖H‖_F = {scale:.3e})"
            ))
        })
}

fn reassemble(q: &CMatrix, diag: impl Iterator<Item = Complex64>) -> CMatrix {
    let d = DVector::from_iterator(q.ncols(), diag);
    let mut scaled = q.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= d[j];
    }
    scaled * q.adjoint()
}

/// exp(A) for A in su(n).
pub fn expm(a: &AlgebraElement) -> Result<GroupElement> {
    // A = −iH  ⇒  exp(A) = V·diag(e^{−iλ})·V†.
    let (vals, vecs) = hermitian_eigen(&a.hamiltonian())?;
    let u = reassemble(&vecs, vals.iter().map(|&l| Complex64::from_polar(1.0, -l)));
    Ok(GroupElement::from_unchecked(u))
}

/// Principal su(n) logarithm of a special unitary matrix.
#[derive(Debug, Clone)]
pub struct SuLog {
    pub log: AlgebraElement,
    /// Eigen-phases θ_j after branch repair (they sum to zero).
    pub phases: Vec<f64>,
    /// Some eigenvalue lies within `Tolerances::branch_cut` of −1, where the
    /// principal branch is discontinuous.
    pub branch_cut: bool,
}

fn wrap_principal(theta: f64) -> f64 {
    let mut t = theta - 2.0 * PI * (theta / (2.0 * PI)).round();
    if t <= -PI {
        t += 2.0 * PI;
    }
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Rotation angle φ such that e^{iφ}U keeps its spectrum well away from −1.
fn gap_rotation(u: &CMatrix) -> Result<f64> {
    // Eigenvalues of (U + U†)/2 are cos θ_j; ±acos covers every phase.
    let (cosines, _) = hermitian_eigen(&((u + u.adjoint()) * c(0.5)))?;
    let mut angles: Vec<f64> = cosines
        .iter()
        .flat_map(|&x| {
            let a = x.clamp(-1.0, 1.0).acos();
            [a, -a]
        })
        .collect();
    angles.sort_by(|a, b| a.total_cmp(b));
    let mut best_gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    let mut mid = angles[angles.len() - 1] + 0.5 * best_gap;
    for w in angles.windows(2) {
        let gap = w[1] - w[0];
        if gap > best_gap {
            best_gap = gap;
            mid = w[0] + 0.5 * gap;
        }
    }
    Ok(PI - mid)
}

pub fn logm_su(u: &GroupElement) -> Result<SuLog> {
    logm_su_with(u, &Tolerances::DEFAULT)
}

pub fn logm_su_with(u: &GroupElement, tol: &Tolerances) -> Result<SuLog> {
    let n = u.dim();
    let id = CMatrix::identity(n, n);
    let phi = gap_rotation(u.matrix())?;
    let v = u.matrix() * Complex64::from_polar(1.0, phi);

    // Cayley transform K = i(I + V)⁻¹(I − V) is Hermitian with eigenvalues
    // tan(ψ/2) for the eigen-phases ψ of V.
    let lu = (&id + &v).lu();
    let x = lu
        .solve(&(&id - &v))
        .ok_or_else(|| ZqocError::Numerical("Cayley transform: I + e^{iφ}U is singular".into()))?;
    let (tans, q) = hermitian_eigen(&(x * I))?;

    let mut phases: Vec<f64> = tans.iter().map(|&t| wrap_principal(2.0 * t.atan() - phi)).collect();
    let branch_cut = phases.iter().any(|&t| 2.0 * (0.5 * t).cos().abs() < tol.branch_cut);

    // Principal phases of a det = 1 matrix sum to 2πk; move k of them across
    // the cut to restore tracelessness.
    let k = (phases.iter().sum::<f64>() / (2.0 * PI)).round() as i64;
    if k != 0 {
        let mut order: Vec<usize> = (0..n).collect();
        if k > 0 {
            order.sort_by(|&a, &b| phases[b].total_cmp(&phases[a]));
        } else {
            order.sort_by(|&a, &b| phases[a].total_cmp(&phases[b]));
        }
        let shift = -2.0 * PI * (k.signum() as f64);
        for &j in order.iter().take(k.unsigned_abs() as usize) {
            phases[j] += shift;
        }
    }

    let l = reassemble(&q, phases.iter().map(|&t| Complex64::new(0.0, t)));
    Ok(SuLog {
        log: AlgebraElement::project(&l),
        phases,
        branch_cut,
    })
}

/// Multiplies a unitary U by the principal n-th root of det(U)⁻¹ so the
/// result has determinant one.
pub fn project_su(u: &CMatrix) -> Result<GroupElement> {
    let n = u.nrows();
    if n != u.ncols() {
        return Err(ZqocError::DimensionMismatch {
            expected: n,
            found: u.ncols(),
        });
    }
    let deviation = unitarity_deviation(u);
    if deviation > Tolerances::DEFAULT.unitary {
        return Err(ZqocError::NotUnitary { deviation });
    }
    let det = u.determinant();
    let phase = (c(1.0) / det).arg() / n as f64;
    GroupElement::new(u * Complex64::from_polar(1.0, phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis::pauli;

    fn sigma(k: usize) -> CMatrix {
        pauli(k)
    }

    #[test]
    fn expm_zero_is_identity() {
        let u = expm(&AlgebraElement::zero(3)).unwrap();
        assert!(u.distance(&GroupElement::identity(3)) < 1e-15);
    }

    #[test]
    fn expm_quarter_turn_about_y() {
        // exp(−i(π/2)σ_y) = −iσ_y = [[0, −1], [1, 0]].
        let a = AlgebraElement::from_hamiltonian(&(sigma(2) * c(PI / 2.0))).unwrap();
        let u = expm(&a).unwrap();
        let expected = CMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)]);
        assert!((u.matrix() - expected).norm() < 1e-14);
    }

    #[test]
    fn expm_inverse() {
        let a = AlgebraElement::from_hamiltonian(&(sigma(1) * c(0.3) + sigma(3) * c(-1.2))).unwrap();
        let p = &expm(&a).unwrap() * &expm(&-&a).unwrap();
        assert!(p.distance(&GroupElement::identity(2)) < 1e-12);
    }

    #[test]
    fn log_of_identity_is_zero() {
        let l = logm_su(&GroupElement::identity(4)).unwrap();
        assert!(l.log.frobenius_norm() < 1e-14);
        assert!(!l.branch_cut);
    }

    #[test]
    fn log_of_minus_i_sigma_y() {
        let u = GroupElement::new(CMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)])).unwrap();
        let l = logm_su(&u).unwrap();
        let expected = sigma(2) * Complex64::new(0.0, -PI / 2.0);
        assert!((l.log.matrix() - expected).norm() < 1e-13);
        assert!(expm(&l.log).unwrap().distance(&u) < 1e-12);
    }

    #[test]
    fn minus_identity_is_flagged_and_repaired() {
        let u = GroupElement::new(CMatrix::identity(2, 2) * c(-1.0)).unwrap();
        let l = logm_su(&u).unwrap();
        assert!(l.branch_cut);
        assert!(l.log.matrix().trace().norm() < 1e-12);
        assert!(expm(&l.log).unwrap().distance(&u) < 1e-12);
    }

    #[test]
    fn branch_repair_in_su3() {
        // Phases (2π/3, 2π/3, 2π/3) are principal but sum to 2π.
        let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        let u = GroupElement::new(CMatrix::from_diagonal_element(3, 3, w)).unwrap();
        let l = logm_su(&u).unwrap();
        assert!(l.phases.iter().sum::<f64>().abs() < 1e-12);
        assert!(expm(&l.log).unwrap().distance(&u) < 1e-12);
    }

    #[test]
    fn project_swap() {
        let mut s = CMatrix::zeros(4, 4);
        s[(0, 0)] = c(1.0);
        s[(1, 2)] = c(1.0);
        s[(2, 1)] = c(1.0);
        s[(3, 3)] = c(1.0);
        let g = project_su(&s).unwrap();
        let expected = &s * Complex64::from_polar(1.0, PI / 4.0);
        assert!((g.matrix() - expected).norm() < 1e-14);
    }

    #[test]
    fn project_global_phase() {
        let u = CMatrix::identity(2, 2) * Complex64::from_polar(1.0, 0.7);
        let g = project_su(&u).unwrap();
        let plus = g.distance(&GroupElement::identity(2));
        let minus = (g.matrix() + CMatrix::identity(2, 2)).norm();
        assert!(plus.min(minus) < 1e-14);
    }

    #[test]
    fn project_leaves_special_untouched() {
        let u = expm(&AlgebraElement::from_hamiltonian(&(sigma(1) * c(0.4))).unwrap()).unwrap();
        assert!(project_su(u.matrix()).unwrap().distance(&u) < 1e-15);
    }

    #[test]
    fn project_rejects_non_unitary() {
        let m = CMatrix::identity(2, 2) * c(2.0);
        assert!(matches!(project_su(&m), Err(ZqocError::NotUnitary { .. })));
    }
}
