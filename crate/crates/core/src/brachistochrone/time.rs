// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Optimal times T with N(log(exp(iTĤ₀)·Ô)) = T.

use num_complex::Complex64;

use crate::algebra::{expm, logm_su, AlgebraElement, ConstraintNorm, GroupElement};
use crate::error::{Result, ZqocError};
use crate::navigation::NavigationData;
use crate::tolerance::Tolerances;

/// Scan settings for the optimal-time equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootScan {
    pub t_max: f64,
    pub step: f64,
    pub tol: f64,
    pub all_roots: bool,
}

impl Default for RootScan {
    fn default() -> Self {
        Self {
            t_max: 50.0,
            step: 0.01,
            tol: 1e-10,
            all_roots: false,
        }
    }
}

impl RootScan {
    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.t_max > self.step && self.tol > 0.0) {
            return Err(ZqocError::InvalidArgument(format!(
                "root scan needs t_max > step > 0 and tol > 0 (t_max {}, step {}, tol {})",
                self.t_max, self.step, self.tol
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSolution {
    pub t_opt: f64,
    /// All accepted roots in increasing order (only the first unless
    /// `all_roots` was requested).
    pub roots: Vec<f64>,
}

/// The direction iD̂ = log(exp(iTĤ₀)·Ô)/T.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicDirection {
    pub direction: AlgebraElement,
    pub branch_cut: bool,
}

const MERGE: f64 = 1e-6;
const MIN_WIDTH: f64 = 1e-9;
const SUBDIVISIONS: usize = 16;

/// log(exp(iTĤ₀)·Ô) = log(exp(−T·W)·Ô) with its branch flag.
fn shifted_log(drift: &AlgebraElement, gate: &GroupElement, t: f64) -> Result<(AlgebraElement, bool)> {
    let u = &expm(&drift.scale(-t))? * gate;
    let l = logm_su(&u)?;
    Ok((l.log, l.branch_cut))
}

pub fn geodesic_direction(drift: &AlgebraElement, gate: &GroupElement, t: f64) -> Result<GeodesicDirection> {
    if !(t > 0.0) {
        return Err(ZqocError::InvalidArgument(format!("T must be positive, got {t}")));
    }
    check_dims(drift, gate)?;
    let (l, branch_cut) = shifted_log(drift, gate, t)?;
    Ok(GeodesicDirection {
        direction: l.scale(1.0 / t),
        branch_cut,
    })
}

fn check_dims(drift: &AlgebraElement, gate: &GroupElement) -> Result<()> {
    if drift.dim() != gate.dim() {
        return Err(ZqocError::DimensionMismatch {
            expected: drift.dim(),
            found: gate.dim(),
        });
    }
    Ok(())
}

struct Residual<'a> {
    drift: &'a AlgebraElement,
    gate: &'a GroupElement,
    norm: &'a ConstraintNorm,
}

impl Residual<'_> {
    /// N(L(T)) − T and the branch flag.
    fn eval(&self, t: f64) -> Result<(f64, bool)> {
        let (l, flag) = shifted_log(self.drift, self.gate, t)?;
        Ok((self.norm.norm(&l)? - t, flag))
    }

    fn accepts(&self, t: f64) -> Result<bool> {
        Ok(self.eval(t)?.0.abs() <= 1e-6 * t.max(1.0))
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, mut r_lo: f64, tol: f64) -> Result<f64> {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            let (r_mid, _) = self.eval(mid)?;
            if r_mid == 0.0 {
                return Ok(mid);
            }
            if (r_mid > 0.0) == (r_lo > 0.0) {
                lo = mid;
                r_lo = r_mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Roots inside one sign-change bracket. Brackets touching a branch cut
    /// are subdivided until the flag clears or they become too narrow.
    fn refine(
        &self,
        (lo, r_lo, f_lo): (f64, f64, bool),
        (hi, r_hi, f_hi): (f64, f64, bool),
        tol: f64,
        out: &mut Vec<f64>,
    ) -> Result<()> {
        if (f_lo || f_hi) && hi - lo > MIN_WIDTH {
            let mut prev = (lo, r_lo, f_lo);
            for k in 1..=SUBDIVISIONS {
                let t = lo + (hi - lo) * k as f64 / SUBDIVISIONS as f64;
                let next = if k == SUBDIVISIONS {
                    (hi, r_hi, f_hi)
                } else {
                    let (r, f) = self.eval(t)?;
                    (t, r, f)
                };
                if prev.1 * next.1 <= 0.0 {
                    self.refine(prev, next, tol, out)?;
                }
                prev = next;
            }
            return Ok(());
        }
        if f_lo || f_hi {
            return Ok(());
        }
        let t = if r_lo == 0.0 {
            lo
        } else if r_hi == 0.0 {
            hi
        } else {
            self.bisect(lo, hi, r_lo, tol)?
        };
        if self.accepts(t)? {
            out.push(t);
        }
        Ok(())
    }
}

/// Shared scan/bisection driver for any constraint norm.
fn solve(drift: &AlgebraElement, gate: &GroupElement, norm: &ConstraintNorm, scan: &RootScan) -> Result<TimeSolution> {
    scan.validate()?;
    check_dims(drift, gate)?;
    NavigationData::new(norm.clone(), drift.clone())?;

    if gate.distance(&GroupElement::identity(gate.dim())) <= 1e-12 {
        return Ok(TimeSolution {
            t_opt: 0.0,
            roots: vec![0.0],
        });
    }

    let residual = Residual { drift, gate, norm };
    let count = (scan.t_max / scan.step).ceil() as usize;
    let mut roots = Vec::new();
    let (r0, f0) = residual.eval(scan.step)?;
    let mut prev = (scan.step, r0, f0);
    for k in 2..=count {
        let t = (k as f64 * scan.step).min(scan.t_max);
        let (r, f) = residual.eval(t)?;
        let next = (t, r, f);
        if prev.1 * r <= 0.0 {
            residual.refine(prev, next, scan.tol, &mut roots)?;
            if !scan.all_roots && !roots.is_empty() {
                break;
            }
        }
        prev = next;
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| (*b - *a).abs() < MERGE);
    match roots.first() {
        Some(&t_opt) => {
            if !scan.all_roots {
                roots.truncate(1);
            }
            Ok(TimeSolution { t_opt, roots })
        }
        None => Err(ZqocError::NoRoot { t_max: scan.t_max }),
    }
}

/// Optimal time under h = κ·Killing.
pub fn optimal_time(
    drift: &AlgebraElement,
    gate: &GroupElement,
    constraint: &ConstraintNorm,
    scan: &RootScan,
) -> Result<TimeSolution> {
    if !matches!(constraint, ConstraintNorm::KillingMultiple { .. }) {
        return Err(ZqocError::InvalidVariant(
            "optimal_time requires a Killing-multiple constraint",
        ));
    }
    solve(drift, gate, constraint, scan)
}

/// Optimal time under a Schatten-p constraint.
pub fn optimal_time_schatten(
    drift: &AlgebraElement,
    gate: &GroupElement,
    constraint: &ConstraintNorm,
    scan: &RootScan,
) -> Result<TimeSolution> {
    if !matches!(constraint, ConstraintNorm::SchattenP { .. }) {
        return Err(ZqocError::InvalidVariant(
            "optimal_time_schatten requires a Schatten-p constraint",
        ));
    }
    solve(drift, gate, constraint, scan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormMethod {
    ClosedForm,
    /// The closed form was not real or failed the residual check.
    ScanFallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutingTime {
    pub t_opt: f64,
    pub method: ClosedFormMethod,
}

/// Quadratic-formula optimal time for a drift commuting with the gate:
/// T = iκTr(Ĥ₀L)/a ± √(κTr(L²)/a − κ²Tr(Ĥ₀L)²/a²), a = κTr(Ĥ₀²) − 1, L = log Ô.
pub fn optimal_time_commuting(drift: &AlgebraElement, gate: &GroupElement, kappa: f64) -> Result<CommutingTime> {
    check_dims(drift, gate)?;
    let constraint = ConstraintNorm::killing(kappa)?;
    let h0 = drift.hamiltonian();
    let o = gate.matrix();
    let norm = (&h0 * o - o * &h0).norm();
    if norm > Tolerances::DEFAULT.commute {
        return Err(ZqocError::NonCommuting { norm });
    }
    NavigationData::new(constraint.clone(), drift.clone())?;

    let l = logm_su(gate)?.log;
    let l = l.matrix();
    let tr_hl = (&h0 * l).trace();
    let tr_ll = (l * l).trace();
    let a = kappa * (&h0 * &h0).trace().re - 1.0;
    let first = Complex64::new(0.0, kappa) * tr_hl / a;
    let disc = (tr_ll * kappa / a - (tr_hl * kappa / a).powi(2)).sqrt();
    let candidates = [first + disc, first - disc];

    let residual = Residual {
        drift,
        gate,
        norm: &constraint,
    };
    let closed = candidates
        .iter()
        .filter(|z| z.im.abs() <= 1e-8 && z.re >= 0.0)
        .map(|z| z.re)
        .fold(None, |best: Option<f64>, t| Some(best.map_or(t, |b| b.min(t))));
    if let Some(t) = closed {
        if t == 0.0 || residual.accepts(t)? {
            return Ok(CommutingTime {
                t_opt: t,
                method: ClosedFormMethod::ClosedForm,
            });
        }
    }
    let t = solve(drift, gate, &constraint, &RootScan::default())?.t_opt;
    Ok(CommutingTime {
        t_opt: t,
        method: ClosedFormMethod::ScanFallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::c;
    use crate::algebra::{pauli, CMatrix};
    use std::f64::consts::PI;

    fn minus_i(h: CMatrix) -> AlgebraElement {
        AlgebraElement::from_hamiltonian(&h).unwrap()
    }

    fn minus_i_sigma_y() -> GroupElement {
        expm(&minus_i(pauli(2) * c(PI / 2.0))).unwrap()
    }

    #[test]
    fn zero_drift() {
        let k = ConstraintNorm::killing(1.0).unwrap();
        let s = optimal_time(&AlgebraElement::zero(2), &minus_i_sigma_y(), &k, &RootScan::default()).unwrap();
        assert!((s.t_opt - PI / 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn commuting_scan_and_closed_form() {
        let k = ConstraintNorm::killing(1.0).unwrap();
        let drift = minus_i(pauli(3) * c(0.25));
        let gate = expm(&minus_i(pauli(3) * c(PI / 2.0))).unwrap();
        let expected = PI / (2f64.sqrt() + 0.5);
        let s = optimal_time(&drift, &gate, &k, &RootScan::default()).unwrap();
        assert!((s.t_opt - expected).abs() < 1e-9);
        let cf = optimal_time_commuting(&drift, &gate, 1.0).unwrap();
        assert_eq!(cf.method, ClosedFormMethod::ClosedForm);
        assert!((cf.t_opt - expected).abs() < 1e-12);
        let d = geodesic_direction(&drift, &gate, s.t_opt).unwrap().direction;
        assert!((d.matrix() - minus_i(pauli(3) * c(1.0 / 2f64.sqrt())).matrix()).norm() < 1e-8);
    }

    #[test]
    fn commuting_rejects_non_commuting() {
        let drift = minus_i((pauli(1) + pauli(2)) * c(0.25));
        assert!(matches!(
            optimal_time_commuting(&drift, &minus_i_sigma_y(), 1.0),
            Err(ZqocError::NonCommuting { .. })
        ));
    }

    #[test]
    fn schatten_one_and_large_p() {
        let gate = minus_i_sigma_y();
        let one = ConstraintNorm::schatten(1.0, 1.0).unwrap();
        let s = optimal_time_schatten(&AlgebraElement::zero(2), &gate, &one, &RootScan::default()).unwrap();
        assert!((s.t_opt - PI).abs() < 1e-9);
        let big = ConstraintNorm::schatten(1e6, 1.0).unwrap();
        let s = optimal_time_schatten(&AlgebraElement::zero(2), &gate, &big, &RootScan::default()).unwrap();
        assert!((s.t_opt - PI / 2.0).abs() < 1e-5);
    }

    #[test]
    fn identity_gate_takes_no_time() {
        let k = ConstraintNorm::killing(1.0).unwrap();
        let s = optimal_time(
            &minus_i(pauli(3) * c(0.1)),
            &GroupElement::identity(2),
            &k,
            &RootScan::default(),
        )
        .unwrap();
        assert_eq!(s.t_opt, 0.0);
    }

    #[test]
    fn no_root_below_small_t_max() {
        let k = ConstraintNorm::killing(1.0).unwrap();
        let scan = RootScan {
            t_max: 1.0,
            ..RootScan::default()
        };
        assert!(matches!(
            optimal_time(&AlgebraElement::zero(2), &minus_i_sigma_y(), &k, &scan),
            Err(ZqocError::NoRoot { .. })
        ));
    }

    #[test]
    fn wrong_variant() {
        let s = ConstraintNorm::schatten(2.0, 1.0).unwrap();
        assert!(optimal_time(&AlgebraElement::zero(2), &minus_i_sigma_y(), &s, &RootScan::default()).is_err());
    }
}
