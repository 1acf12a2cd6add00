// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;

use super::{Metric, NavigationData};
use crate::algebra::{orthonormal_basis, AlgebraElement, Basis, BasisKind, ConstraintNorm};
use crate::error::{Result, ZqocError};

const TAU_MIN: f64 = 1e-12;
const TAU_MAX: f64 = 1e12;
const POINTS_PER_DECADE: usize = 8;

/// The τ > 0 with F̌(A/τ − W) = 1: the time needed to realize velocity A
/// against the drift with a control of unit size.
pub fn finsler_navigation_norm(nav: &NavigationData, a: &AlgebraElement) -> Result<f64> {
    if a.dim() != nav.dim() {
        return Err(ZqocError::DimensionMismatch {
            expected: nav.dim(),
            found: a.dim(),
        });
    }
    if a.is_zero(0.0) {
        return Err(ZqocError::Domain("navigation norm of the zero vector".into()));
    }
    let h = nav.constraint();
    let w = nav.drift();
    let g = |tau: f64| -> Result<f64> { Ok(h.norm(&(&a.scale(1.0 / tau) - w))? - 1.0) };

    let decades = (TAU_MAX / TAU_MIN).log10();
    let count = (decades as usize) * POINTS_PER_DECADE;
    let ratio = (TAU_MAX / TAU_MIN).powf(1.0 / count as f64);
    let mut brackets = Vec::new();
    let mut lo = TAU_MIN;
    let mut g_lo = g(lo)?;
    for _ in 0..count {
        let hi = lo * ratio;
        let g_hi = g(hi)?;
        if g_lo == 0.0 {
            brackets.push((lo, lo));
        } else if g_lo * g_hi < 0.0 {
            brackets.push((lo, hi));
        }
        lo = hi;
        g_lo = g_hi;
    }
    match brackets.len() {
        0 => Err(ZqocError::Numerical(format!(
            "no navigation root for τ in [{TAU_MIN:e}, {TAU_MAX:e}]"
        ))),
        1 => {
            let (mut lo, mut hi) = brackets[0];
            let mut g_lo = g(lo)?;
            while hi - lo > 4.0 * f64::EPSILON * hi {
                let mid = 0.5 * (lo + hi);
                let g_mid = g(mid)?;
                if g_mid == 0.0 {
                    return Ok(mid);
                }
                if (g_mid > 0.0) == (g_lo > 0.0) {
                    lo = mid;
                    g_lo = g_mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        }
        count => Err(ZqocError::MultipleRoots { count }),
    }
}

/// Pointwise navigation metric F(A) = finsler_navigation_norm(nav, A).
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseNavigation {
    nav: NavigationData,
    basis: Basis,
}

impl PointwiseNavigation {
    /// Uses an h-orthonormal basis for inner products and a Killing(1)
    /// orthonormal basis for Schatten constraints.
    pub fn new(nav: NavigationData, kind: BasisKind) -> Result<Self> {
        let h = match nav.constraint() {
            ConstraintNorm::SchattenP { .. } => ConstraintNorm::killing(1.0)?,
            other => other.clone(),
        };
        let basis = orthonormal_basis(nav.dim(), &h, kind)?;
        Ok(Self { nav, basis })
    }

    pub fn navigation(&self) -> &NavigationData {
        &self.nav
    }
}

impl Metric for PointwiseNavigation {
    fn basis(&self) -> &Basis {
        &self.basis
    }

    fn eval_components(&self, x: &DVector<f64>) -> Result<f64> {
        if x.iter().all(|&v| v == 0.0) {
            return Ok(0.0);
        }
        finsler_navigation_norm(&self.nav, &self.basis.from_components(x))
    }
}
