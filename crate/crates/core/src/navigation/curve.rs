// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use super::Metric;
use crate::algebra::{AlgebraElement, CMatrix, GroupElement};
use crate::error::{Result, ZqocError};

/// Samples of a curve on SU(n), given either by right-trivialized velocities
/// (dU/dt)U† or by the group points themselves.
#[derive(Debug, Clone)]
pub enum CurveSamples {
    Velocities {
        times: Vec<f64>,
        velocities: Vec<AlgebraElement>,
    },
    Points {
        times: Vec<f64>,
        points: Vec<GroupElement>,
    },
}

fn check_times(times: &[f64], len: usize) -> Result<()> {
    if times.len() != len {
        return Err(ZqocError::DimensionMismatch {
            expected: times.len(),
            found: len,
        });
    }
    if times.is_empty() {
        return Err(ZqocError::InvalidArgument("curve has no samples".into()));
    }
    if let Some(k) = times.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(ZqocError::InvalidArgument(format!(
            "curve times must be strictly increasing (index {})",
            k + 1
        )));
    }
    Ok(())
}

impl CurveSamples {
    pub fn times(&self) -> &[f64] {
        match self {
            Self::Velocities { times, .. } | Self::Points { times, .. } => times,
        }
    }

    /// Velocities at every sample; group points are differentiated with
    /// second-order (three-point, non-uniform) finite differences.
    pub fn velocities(&self) -> Result<Vec<AlgebraElement>> {
        match self {
            Self::Velocities { times, velocities } => {
                check_times(times, velocities.len())?;
                Ok(velocities.clone())
            }
            Self::Points { times, points } => {
                check_times(times, points.len())?;
                let n = points.len();
                let u = |k: usize| points[k].matrix();
                let derivative = |k: usize| -> CMatrix {
                    if n == 2 {
                        return (u(1) - u(0)) / num_complex::Complex64::new(times[1] - times[0], 0.0);
                    }
                    let (i0, i1, i2) = if k == 0 {
                        (0, 1, 2)
                    } else if k == n - 1 {
                        (n - 3, n - 2, n - 1)
                    } else {
                        (k - 1, k, k + 1)
                    };
                    let t = times[k];
                    let (t0, t1, t2) = (times[i0], times[i1], times[i2]);
                    // Derivatives of the Lagrange basis polynomials at t.
                    let w0 = (2.0 * t - t1 - t2) / ((t0 - t1) * (t0 - t2));
                    let w1 = (2.0 * t - t0 - t2) / ((t1 - t0) * (t1 - t2));
                    let w2 = (2.0 * t - t0 - t1) / ((t2 - t0) * (t2 - t1));
                    u(i0) * num_complex::Complex64::new(w0, 0.0)
                        + u(i1) * num_complex::Complex64::new(w1, 0.0)
                        + u(i2) * num_complex::Complex64::new(w2, 0.0)
                };
                if n == 1 {
                    return Ok(vec![AlgebraElement::zero(points[0].dim())]);
                }
                Ok((0..n)
                    .map(|k| AlgebraElement::project(&(derivative(k) * u(k).adjoint())))
                    .collect())
            }
        }
    }
}

/// ∫ F(velocity) dt by the composite trapezoid rule.
pub fn traversal_time(metric: &dyn Metric, curve: &CurveSamples) -> Result<f64> {
    let times = curve.times();
    let vel = curve.velocities()?;
    if times.len() < 2 {
        return Ok(0.0);
    }
    let values = vel.iter().map(|v| metric.eval(v)).collect::<Result<Vec<_>>>()?;
    Ok(times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, f)| 0.5 * (t[1] - t[0]) * (f[0] + f[1]))
        .sum())
}
