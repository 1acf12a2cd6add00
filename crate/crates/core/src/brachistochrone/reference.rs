// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use crate::error::{Result, ZqocError};

/// Models with a known optimal time for constant (time-independent) control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceModel {
    /// Ĥ₀ = B^x σ_x + B^y σ_y, control amplitude D, gate −iσ_y.
    SingleSpin { bx: f64, by: f64, d: f64 },
    /// Ĥ₀ = J(σ_x⊗σ_x + σ_y⊗σ_y + σ_z⊗σ_z), κ = 1, special unitary swap.
    XXXChain { j: f64 },
}

/// Smallest positive value over the ± branches of the constant-control formula.
pub fn reference_time_independent(model: ReferenceModel) -> Result<f64> {
    let candidates: [f64; 2] = match model {
        ReferenceModel::SingleSpin { bx, by, d } => {
            let gap = d * d - bx * bx - by * by;
            if by == 0.0 {
                let t = if gap > 0.0 { 0.5 * PI / gap.sqrt() } else { f64::NAN };
                [t, f64::NAN]
            } else {
                let root = (1.0 + gap / (by * by)).sqrt();
                let scale = 0.5 * PI * by / gap;
                [scale * (1.0 + root), scale * (1.0 - root)]
            }
        }
        ReferenceModel::XXXChain { j } => {
            let s = 0.5 * PI * 3f64.sqrt();
            let a = 2.0 * 3f64.sqrt() * j;
            [s / (a + 1.0), s / (a - 1.0)]
        }
    };
    candidates
        .into_iter()
        .filter(|t| t.is_finite() && *t > 0.0)
        .fold(None, |best: Option<f64>, t| Some(best.map_or(t, |b| b.min(t))))
        .ok_or_else(|| ZqocError::Domain(format!("no positive constant-control time for {model:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xxx_at_zero_coupling() {
        let t = reference_time_independent(ReferenceModel::XXXChain { j: 0.0 }).unwrap();
        assert!((t - 0.5 * PI * 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn xxx_asymptote() {
        let j = -1.0 / 12f64.sqrt() + 1e-9;
        assert!(reference_time_independent(ReferenceModel::XXXChain { j }).unwrap() > 1e8);
    }

    #[test]
    fn single_spin_b_form() {
        for b in [0.05, 0.2, 0.4, 0.6] {
            let t = reference_time_independent(ReferenceModel::SingleSpin { bx: b, by: b, d: 1.0 }).unwrap();
            let s = 0.5 * PI * b / (1.0 - 2.0 * b * b);
            let r = (1.0 - b * b).sqrt() / b;
            let expected = [s * (1.0 + r), s * (1.0 - r)]
                .into_iter()
                .filter(|x| *x > 0.0)
                .fold(f64::INFINITY, f64::min);
            assert!((t - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn no_drift_single_spin() {
        let t = reference_time_independent(ReferenceModel::SingleSpin {
            bx: 0.0,
            by: 0.0,
            d: 1.0,
        })
        .unwrap();
        assert!((t - 0.5 * PI).abs() < 1e-15);
    }
}
