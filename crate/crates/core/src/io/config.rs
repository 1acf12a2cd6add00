// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    generator_basis, orthonormal_basis, project_su, AlgebraElement, Basis, BasisKind, CMatrix, ConstraintNorm,
    GroupElement,
};
use crate::brachistochrone::RootScan;
use crate::error::{Result, ZqocError};

/// Complex matrix as rows of [re, im] pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_from_json(rows: &MatrixJson, n: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(ZqocError::InvalidArgument(format!("{what} must be a {n}×{n} matrix")));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        let [re, im] = rows[i][j];
        Complex64::new(re, im)
    }))
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConstraintConfig {
    Killing { kappa: f64 },
    Gram { gram: Vec<Vec<f64>> },
    Schatten { p: f64, kappa: f64 },
}

fn default_t_max() -> f64 {
    50.0
}
fn default_scan_step() -> f64 {
    0.01
}
fn default_tol() -> f64 {
    1e-10
}
fn default_samples() -> usize {
    2001
}
fn default_tol_verify() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_scan_step")]
    pub scan_step: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Propagation steps; `max(10⁴, ⌈T/10⁻³⌉)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prop_steps: Option<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_tol_verify")]
    pub tol_verify: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            t_max: default_t_max(),
            scan_step: default_scan_step(),
            tol: default_tol(),
            prop_steps: None,
            samples: default_samples(),
            tol_verify: default_tol_verify(),
        }
    }
}

/// Euler–Poincaré integration settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpConfig {
    /// Initial ξ in basis components; seeded from the closed-form geodesic when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub omega0: Vec<f64>,
    /// Defaults to the optimal time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Basis labels of forbidden control directions.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbidden: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub n: usize,
    /// Hermitian drift Ĥ₀.
    pub drift: MatrixJson,
    pub gate: MatrixJson,
    /// Remove the global phase of a unitary gate instead of requiring det = 1.
    #[serde(default)]
    pub project_gate: bool,
    pub constraint: ConstraintConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub basis: BasisKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ep: Option<EpConfig>,
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| ZqocError::InvalidArgument(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ZqocError::InvalidArgument(format!("reading {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Builds every derived object once so that errors surface at load time.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(ZqocError::InvalidArgument(format!("n must be ≥ 2, got {}", self.n)));
        }
        self.drift()?;
        self.gate()?;
        self.constraint_norm()?;
        self.scan().validate()?;
        if self.solver.samples < 2 {
            return Err(ZqocError::InvalidArgument("solver.samples must be ≥ 2".into()));
        }
        if let Some(0) = self.solver.prop_steps {
            return Err(ZqocError::InvalidArgument("solver.prop_steps must be ≥ 1".into()));
        }
        self.basis_for_fields()?;
        Ok(())
    }

    /// W = −iĤ₀.
    pub fn drift(&self) -> Result<AlgebraElement> {
        AlgebraElement::from_hamiltonian(&matrix_from_json(&self.drift, self.n, "drift")?)
    }

    pub fn gate(&self) -> Result<GroupElement> {
        let m = matrix_from_json(&self.gate, self.n, "gate")?;
        if self.project_gate {
            project_su(&m)
        } else {
            GroupElement::new(m)
        }
    }

    pub fn constraint_norm(&self) -> Result<ConstraintNorm> {
        match &self.constraint {
            ConstraintConfig::Killing { kappa } => ConstraintNorm::killing(*kappa),
            ConstraintConfig::Schatten { p, kappa } => ConstraintNorm::schatten(*p, *kappa),
            ConstraintConfig::Gram { gram } => {
                let m = gram.len();
                if gram.iter().any(|r| r.len() != m) {
                    return Err(ZqocError::InvalidArgument("gram must be square".into()));
                }
                let g = DMatrix::from_fn(m, m, |i, j| gram[i][j]);
                ConstraintNorm::gram(self.n, self.basis, g)
            }
        }
    }

    pub fn scan(&self) -> RootScan {
        RootScan {
            t_max: self.solver.t_max,
            step: self.solver.scan_step,
            tol: self.solver.tol,
            all_roots: false,
        }
    }

    /// Basis used for CSV field columns: the raw generators (iσ_k, iσ_m⊗σ_n,
    /// iλ_k), measured with the constraint inner product (Killing(1) for
    /// Schatten constraints).
    pub fn basis_for_fields(&self) -> Result<Basis> {
        let h = self.constraint_norm()?;
        let h = if h.is_inner_product() {
            h
        } else {
            ConstraintNorm::killing(1.0)?
        };
        generator_basis(self.n, &h, self.basis)
    }

    /// h-orthonormal basis (Killing(1) for Schatten constraints).
    pub fn orthonormal_basis(&self) -> Result<Basis> {
        let h = self.constraint_norm()?;
        let h = if h.is_inner_product() {
            h
        } else {
            ConstraintNorm::killing(1.0)?
        };
        orthonormal_basis(self.n, &h, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLE_SPIN: &str = r#"{
        "n": 2,
        "drift": [[[0,0],[0.25,-0.25]],[[0.25,0.25],[0,0]]],
        "gate": [[[0,0],[-1,0]],[[1,0],[0,0]]],
        "constraint": {"type": "killing", "kappa": 1.0}
    }"#;

    #[test]
    fn parses_with_defaults() {
        let cfg = ProblemConfig::from_json(SINGLE_SPIN).unwrap();
        assert_eq!(cfg.solver, SolverConfig::default());
        assert_eq!(cfg.basis, BasisKind::GellMann);
        assert_eq!(cfg.basis_for_fields().unwrap().labels(), ["sx", "sy", "sz"]);
    }

    #[test]
    fn round_trip() {
        let cfg = ProblemConfig::from_json(SINGLE_SPIN).unwrap();
        let again = ProblemConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn rejects_non_hermitian_drift() {
        let bad = SINGLE_SPIN.replace("[0.25,0.25]", "[0.3,0.25]");
        assert!(matches!(
            ProblemConfig::from_json(&bad),
            Err(ZqocError::NotHermitian { .. })
        ));
    }

    #[test]
    fn rejects_unknown_fields() {
        let bad = SINGLE_SPIN.replace("\"n\": 2,", "\"n\": 2, \"extra\": 1,");
        assert!(ProblemConfig::from_json(&bad).is_err());
    }

    #[test]
    fn projects_swap() {
        let cfg = r#"{
            "n": 4,
            "drift": [[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]],
            "gate": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[0,0],[1,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]],
            "project_gate": true,
            "constraint": {"type": "killing", "kappa": 1.0},
            "basis": "tensor-pauli"
        }"#;
        let cfg = ProblemConfig::from_json(cfg).unwrap();
        assert!((cfg.gate().unwrap().determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(cfg.basis_for_fields().unwrap().labels()[0], "s0x");
    }
}
