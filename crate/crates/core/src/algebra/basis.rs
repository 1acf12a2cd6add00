// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

//! Generalized Gell-Mann and tensor-Pauli bases of su(n).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::element::{c, AlgebraElement, CMatrix, I};
use super::norm::ConstraintNorm;
use crate::error::{Result, ZqocError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BasisKind {
    #[default]
    #[serde(rename = "gellmann")]
    GellMann,
    #[serde(rename = "tensor-pauli")]
    TensorPauli,
}

/// σ_0 = I, σ_1 = σ_x, σ_2 = σ_y, σ_3 = σ_z.
pub fn pauli(k: usize) -> CMatrix {
    let z = c(0.0);
    let one = c(1.0);
    let entries = match k {
        0 => [one, z, z, one],
        1 => [z, one, one, z],
        2 => [z, -I, I, z],
        3 => [one, z, z, -one],
        _ => panic!("Pauli index {k} out of range 0..4"),
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

fn unit(n: usize, j: usize, k: usize, v: Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(j, k)] = v;
    m
}

/// Unnormalized generators iλ_k with their labels, in canonical order.
pub(crate) fn generators(n: usize, kind: BasisKind) -> Result<(Vec<AlgebraElement>, Vec<String>)> {
    if n < 2 {
        return Err(ZqocError::InvalidArgument(format!("dimension must be ≥ 2, got {n}")));
    }
    let mut hams: Vec<CMatrix> = Vec::with_capacity(n * n - 1);
    let mut labels = Vec::with_capacity(n * n - 1);
    match kind {
        BasisKind::GellMann => {
            let pauli_names = n == 2;
            for j in 0..n {
                for k in j + 1..n {
                    hams.push(unit(n, j, k, c(1.0)) + unit(n, k, j, c(1.0)));
                    labels.push(if pauli_names { "sx".into() } else { format!("sym{j}{k}") });
                }
            }
            for j in 0..n {
                for k in j + 1..n {
                    hams.push(unit(n, j, k, -I) + unit(n, k, j, I));
                    labels.push(if pauli_names {
                        "sy".into()
                    } else {
                        format!("asym{j}{k}")
                    });
                }
            }
            for l in 1..n {
                let s = (2.0 / (l * (l + 1)) as f64).sqrt();
                let mut d = CMatrix::zeros(n, n);
                for j in 0..l {
                    d[(j, j)] = c(s);
                }
                d[(l, l)] = c(-s * l as f64);
                hams.push(d);
                labels.push(if pauli_names { "sz".into() } else { format!("diag{l}") });
            }
        }
        BasisKind::TensorPauli => {
            if !n.is_power_of_two() {
                return Err(ZqocError::InvalidArgument(format!(
                    "tensor-Pauli basis needs n = 2^k, got {n}"
                )));
            }
            let qubits = n.trailing_zeros() as usize;
            const NAMES: [char; 4] = ['0', 'x', 'y', 'z'];
            for idx in 1..n * n {
                // Row-major over the factor indices, first factor most significant.
                let digits: Vec<usize> = (0..qubits).map(|q| (idx >> (2 * (qubits - 1 - q))) & 3).collect();
                let mut m = CMatrix::identity(1, 1);
                for &d in &digits {
                    m = m.kronecker(&pauli(d));
                }
                hams.push(m);
                labels.push(std::iter::once('s').chain(digits.iter().map(|&d| NAMES[d])).collect());
            }
        }
    }
    let elements = hams.iter().map(|h| AlgebraElement::from_unchecked(h * I)).collect();
    Ok((elements, labels))
}

/// An h-orthogonal basis B_k of su(n) with stable labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    elements: Vec<AlgebraElement>,
    labels: Vec<String>,
    norms_sq: Vec<f64>,
    h: ConstraintNorm,
}

impl Basis {
    /// Wraps caller-supplied elements; they must be pairwise h-orthogonal.
    pub fn new(elements: Vec<AlgebraElement>, labels: Vec<String>, h: ConstraintNorm) -> Result<Self> {
        if elements.is_empty() || elements.len() != labels.len() {
            return Err(ZqocError::InvalidArgument(
                "basis needs one label per element and at least one element".into(),
            ));
        }
        let norms_sq = elements.iter().map(|e| h.inner(e, e)).collect::<Result<Vec<_>>>()?;
        if let Some(bad) = norms_sq.iter().position(|&x| !(x > 0.0)) {
            return Err(ZqocError::InvalidArgument(format!(
                "basis element {bad} has non-positive norm"
            )));
        }
        let basis = Self {
            elements,
            labels,
            norms_sq,
            h,
        };
        let max_off = basis.max_off_diagonal()?;
        if max_off > 1e-10 {
            return Err(ZqocError::NonOrthogonalBasis { max_off });
        }
        Ok(basis)
    }

    /// Largest normalized off-diagonal entry |h(B_i,B_j)|/√(h_ii h_jj).
    fn max_off_diagonal(&self) -> Result<f64> {
        let mut max_off = 0.0_f64;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                let v = self.h.inner(&self.elements[i], &self.elements[j])?;
                max_off = max_off.max(v.abs() / (self.norms_sq[i] * self.norms_sq[j]).sqrt());
            }
        }
        Ok(max_off)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn norms_sq(&self) -> &[f64] {
        &self.norms_sq
    }

    pub fn norm(&self) -> &ConstraintNorm {
        &self.h
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// h(B_i, B_j); diagonal by construction.
    pub fn metric(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_column_slice(&self.norms_sq))
    }

    pub fn inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> f64 {
        self.h
            .inner(a, b)
            .expect("basis norm is an inner product of matching dimension")
    }

    /// Coefficients a_k = h(A, B_k)/h(B_k, B_k).
    pub fn components(&self, a: &AlgebraElement) -> DVector<f64> {
        DVector::from_iterator(
            self.len(),
            self.elements
                .iter()
                .zip(&self.norms_sq)
                .map(|(b, sq)| self.inner(a, b) / sq),
        )
    }

    pub fn from_components(&self, x: &DVector<f64>) -> AlgebraElement {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        for (b, &xk) in self.elements.iter().zip(x.iter()) {
            m += b.matrix() * c(xk);
        }
        AlgebraElement::from_unchecked(m)
    }
}

/// Generators rescaled to unit h-norm; for a non-diagonal Gram metric the
/// frame is h-Gram–Schmidt orthonormalized in order, keeping frame labels.
pub fn orthonormal_basis(n: usize, h: &ConstraintNorm, kind: BasisKind) -> Result<Basis> {
    let (frame, labels) = match h {
        ConstraintNorm::SchattenP { .. } => {
            return Err(ZqocError::InvalidVariant(
                "orthonormal basis requires an inner-product constraint",
            ))
        }
        ConstraintNorm::Gram(g) => {
            if g.dim() != n {
                return Err(ZqocError::DimensionMismatch {
                    expected: g.dim(),
                    found: n,
                });
            }
            (g.frame().to_vec(), g.labels().to_vec())
        }
        ConstraintNorm::KillingMultiple { .. } => generators(n, kind)?,
    };

    let m = frame.len();
    let mut gram = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = h.inner(&frame[i], &frame[j])?;
            gram[(i, j)] = v;
            gram[(j, i)] = v;
        }
    }

    // Columns of `coef` hold frame coefficients of the orthonormal elements.
    let mut coef = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let mut v = DVector::<f64>::zeros(m);
        v[k] = 1.0;
        for j in 0..k {
            let cj = coef.column(j).into_owned();
            let proj = cj.dot(&(&gram * &v));
            v -= cj * proj;
        }
        let nrm = v.dot(&(&gram * &v)).sqrt();
        coef.set_column(k, &(v / nrm));
    }

    let elements = (0..m)
        .map(|k| {
            let mut acc = CMatrix::zeros(n, n);
            for (j, f) in frame.iter().enumerate() {
                let w = coef[(j, k)];
                if w != 0.0 {
                    acc += f.matrix() * c(w);
                }
            }
            AlgebraElement::from_unchecked(acc)
        })
        .collect();
    Basis::new(elements, labels, h.clone())
}

/// The raw generators iλ_k (iσ_k for n = 2) as an h-orthogonal basis; for a
/// correlated Gram metric, falls back to `orthonormal_basis`.
pub fn generator_basis(n: usize, h: &ConstraintNorm, kind: BasisKind) -> Result<Basis> {
    match h {
        ConstraintNorm::SchattenP { .. } => Err(ZqocError::InvalidVariant(
            "generator basis requires an inner-product constraint",
        )),
        ConstraintNorm::Gram(g) => {
            let off = g.gram().clone() - DMatrix::from_diagonal(&g.gram().diagonal());
            if off.amax() > 0.0 {
                return orthonormal_basis(n, h, kind);
            }
            let (elements, labels) = (g.frame().to_vec(), g.labels().to_vec());
            Basis::new(elements, labels, h.clone())
        }
        ConstraintNorm::KillingMultiple { .. } => {
            let (elements, labels) = generators(n, kind)?;
            Basis::new(elements, labels, h.clone())
        }
    }
}
