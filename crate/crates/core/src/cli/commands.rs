// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use nalgebra::DVector;

use super::CliError;
use crate::algebra::{structure_constants, AlgebraElement, Basis, ConstraintNorm, GroupElement};
use crate::brachistochrone::{
    constant_control_optimal, constraint_value, default_steps, propagate, uniform_grid, GeodesicSolution,
};
use crate::error::ZqocError;
use crate::io::{fmt_num, parse_table, schedule_from_csv, schedule_to_csv, write_atomic, ProblemConfig, Report};
use crate::navigation::{
    build_randers, is_geodesic_vector, traversal_time, CurveSamples, Metric, NavigationData, PointwiseNavigation,
    RandersData,
};
use crate::reduction::{constrained_ep_integrate, ep_integrate, ep_rhs, reconstruct_group, ConstraintSet};

type CliResult = Result<(), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ProblemConfig, CliError> {
    Ok(ProblemConfig::from_path(path)?)
}

fn with_suffix(prefix: &Path, suffix: &str) -> std::path::PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    s.into()
}

fn emit(stdout: &mut dyn std::io::Write, text: &str) -> CliResult {
    stdout.write_all(text.as_bytes())?;
    Ok(())
}

fn randers_for(cfg: &ProblemConfig, basis: &Basis) -> Result<RandersData, CliError> {
    let nav = NavigationData::new(cfg.constraint_norm()?, cfg.drift()?)?;
    Ok(build_randers(&nav, basis)?)
}

/// Randers metric for inner-product constraints, pointwise navigation otherwise.
fn metric_for(cfg: &ProblemConfig) -> Result<Box<dyn Metric>, CliError> {
    let h = cfg.constraint_norm()?;
    if h.is_inner_product() {
        Ok(Box::new(randers_for(cfg, &cfg.orthonormal_basis()?)?))
    } else {
        let nav = NavigationData::new(h, cfg.drift()?)?;
        Ok(Box::new(PointwiseNavigation::new(nav, cfg.basis)?))
    }
}

fn max_abs_dev(values: impl Iterator<Item = f64>, target: f64) -> f64 {
    values.fold(0.0_f64, |m, v| m.max((v - target).abs()))
}

pub(super) fn synthesize(
    config: &Path,
    out: &Path,
    steps: Option<usize>,
    tol: Option<f64>,
    all_roots: bool,
    stdout: &mut dyn std::io::Write,
) -> CliResult {
    let cfg = load(config)?;
    let drift = cfg.drift()?;
    let gate = cfg.gate()?;
    let h = cfg.constraint_norm()?;
    let mut scan = cfg.scan();
    scan.all_roots = all_roots;
    let sol = GeodesicSolution::solve(&drift, &gate, &h, &scan)?;

    let basis = cfg.basis_for_fields()?;
    let grid = uniform_grid(sol.t_opt, cfg.solver.samples - 1);
    let schedule = sol.control_fields(&basis, &grid)?;

    let steps = steps
        .or(cfg.solver.prop_steps)
        .unwrap_or_else(|| default_steps(sol.t_opt));
    let u = propagate(|t| sol.velocity_at(t.min(sol.t_opt)), sol.t_opt, steps)?;
    let residual = u.distance(&gate);

    let metric = metric_for(&cfg)?;
    let speeds = grid
        .iter()
        .map(|&t| metric.eval(&sol.velocity_at(t)?))
        .collect::<crate::Result<Vec<_>>>()?;
    let unit_speed = if sol.t_opt > 0.0 {
        max_abs_dev(speeds.into_iter(), 1.0)
    } else {
        0.0
    };

    let schedule_path = with_suffix(out, ".schedule.csv");
    let report_path = with_suffix(out, ".report.json");
    let report = Report {
        t_opt: Some(sol.t_opt),
        roots: sol.roots.clone(),
        endpoint_residual: Some(residual),
        constraint_max_violation: Some(if sol.t_opt > 0.0 {
            schedule.max_constraint_violation()
        } else {
            0.0
        }),
        unit_speed_max_violation: Some(unit_speed),
        constant_control_optimal: Some(constant_control_optimal(&drift, &gate)),
        branch_cut: Some(sol.branch_cut),
        propagation_steps: Some(steps),
        outputs: vec![schedule_path.display().to_string(), report_path.display().to_string()],
        ..Report::default()
    };
    write_atomic(&schedule_path, &schedule_to_csv(&schedule))?;
    write_atomic(&report_path, &report.to_json())?;
    emit(stdout, &report.to_json())?;

    let tol = tol.unwrap_or(cfg.solver.tol_verify);
    if residual > tol {
        return Err(CliError::Verification { residual, tol });
    }
    Ok(())
}

/// Piecewise-linear interpolation of field vectors on a sorted grid.
fn interpolate(times: &[f64], fields: &[DVector<f64>], t: f64) -> DVector<f64> {
    let k = times.partition_point(|&x| x <= t);
    if k == 0 {
        return fields[0].clone();
    }
    if k >= times.len() {
        return fields[times.len() - 1].clone();
    }
    let (t0, t1) = (times[k - 1], times[k]);
    let w = (t - t0) / (t1 - t0);
    &fields[k - 1] * (1.0 - w) + &fields[k] * w
}

pub(super) fn verify(
    config: &Path,
    schedule: &Path,
    steps: Option<usize>,
    tol: Option<f64>,
    out: Option<&Path>,
    stdout: &mut dyn std::io::Write,
) -> CliResult {
    let cfg = load(config)?;
    let drift = cfg.drift()?;
    let gate = cfg.gate()?;
    let h = cfg.constraint_norm()?;
    let basis = cfg.basis_for_fields()?;
    let (times, fields) = schedule_from_csv(&read(schedule)?, basis.labels())?;
    let tol = tol.unwrap_or(cfg.solver.tol_verify);

    let mut report = Report::default();
    let residual = if times.is_empty() {
        report.t_opt = Some(0.0);
        report.traversal_time = Some(0.0);
        gate.distance(&GroupElement::identity(cfg.n))
    } else {
        if times[0].abs() > 1e-12 {
            return Err(CliError::Usage(format!(
                "schedule must start at t = 0, starts at {}",
                times[0]
            )));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::Usage("schedule times must be strictly increasing".into()));
        }
        let t_end = *times.last().expect("non-empty");
        let hc = |t: f64| basis.from_components(&interpolate(&times, &fields, t));
        let steps = steps.or(cfg.solver.prop_steps).unwrap_or_else(|| default_steps(t_end));
        let u = if t_end > 0.0 {
            propagate(|t| Ok(&drift + &hc(t)), t_end, steps)?
        } else {
            GroupElement::identity(cfg.n)
        };
        let checks = fields
            .iter()
            .map(|f| constraint_value(&h, &basis.from_components(f)))
            .collect::<crate::Result<Vec<_>>>()?;
        report.constraint_max_violation = Some(max_abs_dev(checks.into_iter(), 1.0));
        if times.len() >= 2 {
            let velocities = fields.iter().map(|f| &drift + &basis.from_components(f)).collect();
            let curve = CurveSamples::Velocities {
                times: times.clone(),
                velocities,
            };
            report.traversal_time = Some(traversal_time(metric_for(&cfg)?.as_ref(), &curve)?);
        }
        report.t_opt = Some(t_end);
        report.propagation_steps = Some(steps);
        u.distance(&gate)
    };
    report.endpoint_residual = Some(residual);
    report.constant_control_optimal = Some(constant_control_optimal(&drift, &gate));
    if let Some(path) = out {
        report.outputs.push(path.display().to_string());
        write_atomic(path, &report.to_json())?;
    }
    emit(stdout, &report.to_json())?;
    if residual > tol {
        return Err(CliError::Verification { residual, tol });
    }
    Ok(())
}

pub(super) fn traverse(config: &Path, curve: &Path, stdout: &mut dyn std::io::Write) -> CliResult {
    let cfg = load(config)?;
    let basis = cfg.basis_for_fields()?;
    let table = parse_table(&read(curve)?)?;
    if table.header.len() != basis.len() + 1 {
        return Err(CliError::Usage(format!(
            "curve needs t plus {} velocity columns, got {} columns",
            basis.len(),
            table.header.len()
        )));
    }
    let times: Vec<f64> = table.rows.iter().map(|r| r[0]).collect();
    let velocities = table
        .rows
        .iter()
        .map(|r| basis.from_components(&DVector::from_column_slice(&r[1..])))
        .collect();
    let metric = metric_for(&cfg)?;
    let t = traversal_time(metric.as_ref(), &CurveSamples::Velocities { times, velocities })?;
    emit(stdout, &format!("{{\n  \"traversal_time\": {}\n}}\n", fmt_num(t)))
}

pub(super) fn ep(config: &Path, out: &Path, steps: Option<usize>, stdout: &mut dyn std::io::Write) -> CliResult {
    let cfg = load(config)?;
    let ep = cfg.ep.clone().unwrap_or(crate::io::EpConfig {
        xi0: None,
        omega0: Vec::new(),
        t_end: None,
        steps: None,
        forbidden: Vec::new(),
    });
    let drift = cfg.drift()?;
    let gate = cfg.gate()?;
    let h = cfg.constraint_norm()?;
    if !matches!(h, ConstraintNorm::KillingMultiple { .. } | ConstraintNorm::Gram(_)) {
        return Err(ZqocError::InvalidVariant("EP integration needs an inner-product constraint").into());
    }
    let basis = cfg.basis_for_fields()?;
    let randers = randers_for(&cfg, &basis)?;
    let c = structure_constants(&basis)?;

    let seed = || -> Result<GeodesicSolution, CliError> {
        if !matches!(h, ConstraintNorm::KillingMultiple { .. }) {
            return Err(CliError::Usage(
                "ep.xi0 and ep.t_end are required for a Gram constraint".into(),
            ));
        }
        Ok(GeodesicSolution::solve(&drift, &gate, &h, &cfg.scan())?)
    };
    let (xi0, t_end) = match (&ep.xi0, ep.t_end) {
        (Some(x), Some(t)) => (DVector::from_column_slice(x), t),
        (x, t) => {
            let sol = seed()?;
            let xi0 = match x {
                Some(x) => DVector::from_column_slice(x),
                None => basis.components(&sol.velocity_at(0.0)?),
            };
            (xi0, t.unwrap_or(sol.t_opt))
        }
    };
    if xi0.len() != basis.len() {
        return Err(CliError::Usage(format!("ep.xi0 needs {} components", basis.len())));
    }
    let steps = steps.or(ep.steps).unwrap_or(2000);

    let forbidden = ep
        .forbidden
        .iter()
        .map(|label| {
            basis
                .index_of(label)
                .map(|k| basis.elements()[k].clone())
                .ok_or_else(|| CliError::Usage(format!("unknown basis label {label:?}")))
        })
        .collect::<Result<Vec<AlgebraElement>, _>>()?;

    let (traj, constraint_violation) = if forbidden.is_empty() {
        let traj = ep_integrate(|_, x| ep_rhs(&randers, &c, x), &xi0, t_end, steps)?;
        (traj, None)
    } else {
        let set = ConstraintSet::forbidden(&basis, forbidden, &drift)?;
        let omega0 = if ep.omega0.is_empty() {
            DVector::zeros(set.len())
        } else {
            DVector::from_column_slice(&ep.omega0)
        };
        let traj = constrained_ep_integrate(&randers, &c, &set, &xi0, &omega0, t_end, steps)?;
        let worst = traj
            .states
            .iter()
            .map(|x| set.violation(x).amax())
            .fold(0.0_f64, f64::max);
        (traj, Some(worst))
    };

    let path = reconstruct_group(&traj, &basis)?;
    let k = traj
        .multipliers
        .as_ref()
        .map_or(0, |m| m.first().map_or(0, |v| v.len()));
    let mut header: Vec<String> = vec!["t".into()];
    header.extend(basis.labels().iter().map(|l| format!("xi_{l}")));
    header.extend((0..k).map(|j| format!("omega_{j}")));
    header.push("endpoint_residual".into());
    let rows: Vec<Vec<f64>> = (0..traj.times.len())
        .map(|i| {
            let mut r = vec![traj.times[i]];
            r.extend(traj.states[i].iter());
            if let Some(m) = &traj.multipliers {
                r.extend(m[i].iter());
            }
            r.push(path[i].distance(&gate));
            r
        })
        .collect();
    write_atomic(out, &crate::io::table_to_csv(&header, &rows))?;

    let f0 = randers.norm_components(&xi0);
    let report = Report {
        endpoint_residual: path.last().map(|u| u.distance(&gate)),
        unit_speed_max_violation: Some(max_abs_dev(traj.states.iter().map(|x| randers.norm_components(x)), f0)),
        constraint_max_violation: constraint_violation,
        outputs: vec![out.display().to_string()],
        ..Report::default()
    };
    emit(stdout, &report.to_json())
}

pub(super) fn geovec(config: &Path, x: &str, tol: f64, stdout: &mut dyn std::io::Write) -> CliResult {
    let cfg = load(config)?;
    let basis = cfg.basis_for_fields()?;
    let comps = x
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--x: {e}")))?;
    if comps.len() != basis.len() {
        return Err(CliError::Usage(format!("--x needs {} components", basis.len())));
    }
    let xe = basis.from_components(&DVector::from_vec(comps));
    let metric = metric_for(&cfg)?;
    let check = is_geodesic_vector(metric.as_ref(), &xe, tol)?;
    let residuals: Vec<String> = check.residuals.iter().map(|&r| fmt_num(r)).collect();
    emit(
        stdout,
        &format!(
            "{{\n  \"is_geodesic\": {},\n  \"max_residual\": {},\n  \"residuals\": [{}]\n}}\n",
            check.is_geodesic,
            fmt_num(check.max_residual()),
            residuals.join(", ")
        ),
    )
}
