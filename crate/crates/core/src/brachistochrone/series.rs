// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use crate::algebra::{logm_su, AlgebraElement, GroupElement};
use crate::error::{Result, ZqocError};

/// Truncated BCH series for iD̂ with X = iĤ₀ and L = log Ô:
/// X + L/T + ½[X,L] + (T/12)[X,[X,L]] − (1/12)[L,[X,L]] − (T/24)[L,[X,[X,L]]].
/// `order` is the number of leading terms kept (1..=6).
pub fn bch_direction(drift: &AlgebraElement, gate: &GroupElement, t: f64, order: usize) -> Result<AlgebraElement> {
    if !(1..=6).contains(&order) {
        return Err(ZqocError::InvalidArgument(format!(
            "BCH order must be 1..=6, got {order}"
        )));
    }
    if !(t > 0.0) {
        return Err(ZqocError::InvalidArgument(format!("T must be positive, got {t}")));
    }
    let x = -drift;
    let l = logm_su(gate)?.log;
    let xl = x.bracket(&l);
    let xxl = x.bracket(&xl);
    let terms = [
        x.clone(),
        l.scale(1.0 / t),
        xl.scale(0.5),
        xxl.scale(t / 12.0),
        l.bracket(&xl).scale(-1.0 / 12.0),
        l.bracket(&xxl).scale(-t / 24.0),
    ];
    Ok(terms[1..order].iter().fold(terms[0].clone(), |acc, term| &acc + term))
}
