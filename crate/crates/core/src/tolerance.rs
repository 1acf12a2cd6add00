// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical tolerances shared by every module.

/// Tolerance record. `Tolerances::DEFAULT` carries the values used by the
/// type invariants; callers that need looser checks build their own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max |A + A†| entry for anti-Hermitian checks.
    pub anti_hermitian: f64,
    /// Max |tr A|.
    pub traceless: f64,
    /// ‖U†U − I‖_F.
    pub unitary: f64,
    /// |det U − 1|.
    pub special: f64,
    /// Distance of an eigenvalue from −1 that marks a log branch cut.
    pub branch_cut: f64,
    /// Weak wind requires h(W, W) ≤ 1 − weak_wind.
    pub weak_wind: f64,
    /// ‖[H0, O]‖_F below which drift and gate are taken to commute.
    pub commute: f64,
    /// Jacobi identity residual for structure constants.
    pub jacobi: f64,
    /// Off-diagonal inner products allowed in an orthogonal basis.
    pub orthogonal: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        anti_hermitian: 1e-12,
        traceless: 1e-10,
        unitary: 1e-10,
        special: 1e-8,
        branch_cut: 1e-8,
        weak_wind: 1e-6,
        commute: 1e-10,
        jacobi: 1e-10,
        orthogonal: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
