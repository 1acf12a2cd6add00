// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. The `zqoc` binary is a thin wrapper over [`run`].

mod commands;
mod sweep;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::ZqocError;

pub use sweep::{SweepRow, SweepSummary};

#[derive(Debug, Parser)]
#[command(name = "zqoc", version, about = "Time-optimal unitary gate synthesis on SU(n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    /// Single spin with B^x = B^y = b.
    #[value(name = "b")]
    B,
    /// Isotropic two-spin chain coupling J.
    #[value(name = "J", alias = "j")]
    J,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the optimal time and control; writes <out>.schedule.csv and <out>.report.json.
    Synthesize {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Propagation steps for the endpoint check.
        #[arg(long)]
        steps: Option<usize>,
        /// Endpoint residual tolerance (overrides solver.tol_verify).
        #[arg(long)]
        tol: Option<f64>,
        /// Report every root of the optimal-time equation up to t_max.
        #[arg(long)]
        all_roots: bool,
    },
    /// Compare time-dependent and constant-control optimal times over a parameter range.
    Sweep {
        config: PathBuf,
        #[arg(long, value_enum)]
        param: SweepParam,
        /// lo:hi:step
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Propagate a schedule CSV and check that it implements the gate.
    Verify {
        config: PathBuf,
        schedule: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Also write the report JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Traversal time of a curve given as t, velocity components.
    Traverse { config: PathBuf, curve: PathBuf },
    /// Integrate the (constrained) Euler–Poincaré equations from the config's `ep` section.
    Ep {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Check whether X (comma-separated basis components) is a geodesic vector.
    Geovec {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Solver(ZqocError),
    Io(String),
    Usage(String),
    Verification { residual: f64, tol: f64 },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Solver(e) => write!(f, "{e}"),
            Self::Io(e) => write!(f, "I/O error: {e}"),
            Self::Usage(e) => write!(f, "{e}"),
            Self::Verification { residual, tol } => {
                write!(f, "verification failed: endpoint residual {residual:.3e} > {tol:.3e}")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<ZqocError> for CliError {
    fn from(e: ZqocError) -> Self {
        Self::Solver(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

impl CliError {
    /// 2 invalid input, 3 strong wind, 4 no root, 5 verification failure, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Solver(e) => solver_exit_code(e),
            Self::Io(_) => 1,
            Self::Usage(_) => 2,
            Self::Verification { .. } => 5,
        }
    }
}

fn solver_exit_code(e: &ZqocError) -> i32 {
    match e {
        ZqocError::StrongWind { .. } => 3,
        ZqocError::NoRoot { .. } => 4,
        ZqocError::Integration { source, .. } => solver_exit_code(source),
        ZqocError::Numerical(_) | ZqocError::SingularSystem { .. } | ZqocError::MultipleRoots { .. } => 1,
        _ => 2,
    }
}

/// Runs a parsed command, writing human-readable JSON results to `stdout`.
pub fn run(cli: Cli, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    match cli.command {
        Command::Synthesize {
            config,
            out,
            steps,
            tol,
            all_roots,
        } => commands::synthesize(&config, &out, steps, tol, all_roots, stdout),
        Command::Sweep {
            config,
            param,
            range,
            out,
        } => sweep::sweep(&config, param, &range, &out, stdout),
        Command::Verify {
            config,
            schedule,
            steps,
            tol,
            out,
        } => commands::verify(&config, &schedule, steps, tol, out.as_deref(), stdout),
        Command::Traverse { config, curve } => commands::traverse(&config, &curve, stdout),
        Command::Ep { config, out, steps } => commands::ep(&config, &out, steps, stdout),
        Command::Geovec { config, x, tol } => commands::geovec(&config, &x, tol, stdout),
    }
}
