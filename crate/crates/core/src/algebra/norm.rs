// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::basis::{generators, BasisKind};
use super::element::{AlgebraElement, CMatrix};
use super::functions::hermitian_eigen;
use crate::error::{Result, ZqocError};

/// Re Tr(AB) without forming the product.
pub(crate) fn re_trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += (a[(i, j)] * b[(j, i)]).re;
        }
    }
    s
}

/// A general right-invariant inner product, given by its Gram matrix over a
/// fixed Killing-orthogonal frame of generators.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMetric {
    n: usize,
    kind: BasisKind,
    frame: Vec<AlgebraElement>,
    labels: Vec<String>,
    frame_sq: Vec<f64>,
    gram: DMatrix<f64>,
}

impl GramMetric {
    pub fn new(n: usize, kind: BasisKind, gram: DMatrix<f64>) -> Result<Self> {
        let (frame, labels) = generators(n, kind)?;
        let m = frame.len();
        if gram.nrows() != m || gram.ncols() != m {
            return Err(ZqocError::DimensionMismatch {
                expected: m,
                found: gram.nrows().max(gram.ncols()),
            });
        }
        let asym = (&gram - gram.transpose()).amax();
        if asym > 1e-12 * gram.amax().max(1.0) {
            return Err(ZqocError::InvalidArgument(format!(
                "Gram matrix is not symmetric (max |G − Gᵀ| = {asym:.3e})"
            )));
        }
        let sym = (&gram + gram.transpose()) * 0.5;
        let min_eig = sym.symmetric_eigenvalues().min();
        if !(min_eig > 0.0) {
            return Err(ZqocError::InvalidArgument(format!(
                "Gram matrix is not positive definite (smallest eigenvalue {min_eig:.3e})"
            )));
        }
        let frame_sq = frame
            .iter()
            .map(|f| -re_trace_product(f.matrix(), f.matrix()))
            .collect();
        Ok(Self {
            n,
            kind,
            frame,
            labels,
            frame_sq,
            gram: sym,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn frame(&self) -> &[AlgebraElement] {
        &self.frame
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// Components of `a` over the frame.
    pub fn frame_components(&self, a: &AlgebraElement) -> DVector<f64> {
        DVector::from_iterator(
            self.frame.len(),
            self.frame
                .iter()
                .zip(&self.frame_sq)
                .map(|(f, sq)| -re_trace_product(f.matrix(), a.matrix()) / sq),
        )
    }
}

/// The control-size constraint.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintNorm {
    /// h(A, B) = −κ Re Tr(AB), i.e. κ Tr(H_A H_B) on Hamiltonians.
    KillingMultiple {
        kappa: f64,
    },
    Gram(Arc<GramMetric>),
    /// κ (Σ|E_n|^p)^{1/p} over the eigenvalues of iA; p may be infinite.
    SchattenP {
        p: f64,
        kappa: f64,
    },
}

impl ConstraintNorm {
    pub fn killing(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(ZqocError::InvalidArgument(format!(
                "kappa must be positive and finite, got {kappa}"
            )));
        }
        Ok(Self::KillingMultiple { kappa })
    }

    pub fn gram(n: usize, kind: BasisKind, gram: DMatrix<f64>) -> Result<Self> {
        Ok(Self::Gram(Arc::new(GramMetric::new(n, kind, gram)?)))
    }

    pub fn schatten(p: f64, kappa: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(ZqocError::InvalidArgument(format!("Schatten p must be ≥ 1, got {p}")));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(ZqocError::InvalidArgument(format!(
                "kappa must be positive and finite, got {kappa}"
            )));
        }
        Ok(Self::SchattenP { p, kappa })
    }

    pub fn is_inner_product(&self) -> bool {
        !matches!(self, Self::SchattenP { .. })
    }

    pub fn inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
        if a.dim() != b.dim() {
            return Err(ZqocError::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        match self {
            Self::KillingMultiple { kappa } => Ok(-kappa * re_trace_product(a.matrix(), b.matrix())),
            Self::Gram(g) => {
                if g.dim() != a.dim() {
                    return Err(ZqocError::DimensionMismatch {
                        expected: g.dim(),
                        found: a.dim(),
                    });
                }
                let x = g.frame_components(a);
                let y = g.frame_components(b);
                Ok(x.dot(&(g.gram() * y)))
            }
            Self::SchattenP { .. } => Err(ZqocError::InvalidVariant(
                "inner product requested from a Schatten-p norm",
            )),
        }
    }

    /// The norm of `a`: √h(a,a) for inner products, the Schatten value otherwise.
    pub fn norm(&self, a: &AlgebraElement) -> Result<f64> {
        match self {
            Self::SchattenP { .. } => schatten(self, a),
            _ => Ok(self.inner(a, a)?.max(0.0).sqrt()),
        }
    }
}

/// κ‖iA‖_p from the eigenvalues of the Hermitian matrix iA.
pub fn schatten(norm: &ConstraintNorm, a: &AlgebraElement) -> Result<f64> {
    let ConstraintNorm::SchattenP { p, kappa } = *norm else {
        return Err(ZqocError::InvalidVariant("schatten() requires a Schatten-p norm"));
    };
    let (vals, _) = hermitian_eigen(&a.hamiltonian())?;
    Ok(kappa * lp_norm(vals.iter().copied(), p))
}

/// ℓ^p norm of a finite sequence, scaled by its maximum to avoid overflow.
pub(crate) fn lp_norm(xs: impl Iterator<Item = f64> + Clone, p: f64) -> f64 {
    let max = xs.clone().fold(0.0_f64, |m, x| m.max(x.abs()));
    if max == 0.0 || p.is_infinite() {
        return max;
    }
    max * xs.map(|x| (x.abs() / max).powf(p)).sum::<f64>().powf(1.0 / p)
}
