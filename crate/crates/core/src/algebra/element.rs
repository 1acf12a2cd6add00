// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, ZqocError};
use crate::tolerance::Tolerances;

pub type CMatrix = DMatrix<Complex64>;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry of |A + A†|.
pub(crate) fn anti_hermitian_deviation(m: &CMatrix) -> f64 {
    (m + m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(ZqocError::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() < 2 {
        return Err(ZqocError::InvalidArgument(format!(
            "matrix dimension must be at least 2, got {}",
            m.nrows()
        )));
    }
    Ok(m.nrows())
}

/// Element of su(n): anti-Hermitian, traceless. Holds −iH for a traceless
/// Hamiltonian H.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    m: CMatrix,
}

impl AlgebraElement {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        check_square(&m)?;
        let deviation = anti_hermitian_deviation(&m);
        if deviation > tol.anti_hermitian {
            return Err(ZqocError::NotAntiHermitian { deviation });
        }
        let trace = m.trace().norm();
        if trace > tol.traceless {
            return Err(ZqocError::NotTraceless { trace });
        }
        Ok(Self { m })
    }

    /// Orthogonal projection of an arbitrary square matrix onto su(n).
    pub fn project(m: &CMatrix) -> Self {
        let n = m.nrows();
        let mut a = (m - m.adjoint()) * c(0.5);
        let shift = a.trace() / c(n as f64);
        for k in 0..n {
            a[(k, k)] -= shift;
        }
        Self { m: a }
    }

    /// −iH for a Hermitian, traceless H.
    pub fn from_hamiltonian(h: &CMatrix) -> Result<Self> {
        check_square(h)?;
        let deviation = hermitian_deviation(h);
        if deviation > 1e-10 {
            return Err(ZqocError::NotHermitian { deviation });
        }
        let trace = h.trace().norm();
        if trace > Tolerances::DEFAULT.traceless {
            return Err(ZqocError::NotTraceless { trace });
        }
        Ok(Self::project(&(h * -I)))
    }

    pub fn zero(n: usize) -> Self {
        Self {
            m: CMatrix::zeros(n, n),
        }
    }

    pub(crate) fn from_unchecked(m: CMatrix) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    /// The Hermitian matrix H with self = −iH.
    pub fn hamiltonian(&self) -> CMatrix {
        &self.m * I
    }

    /// Lie bracket [self, other].
    pub fn bracket(&self, other: &AlgebraElement) -> AlgebraElement {
        Self {
            m: &self.m * &other.m - &other.m * &self.m,
        }
    }

    /// U·self·U†.
    pub fn conjugate(&self, u: &GroupElement) -> AlgebraElement {
        Self::project(&(u.matrix() * &self.m * u.matrix().adjoint()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        Self { m: &self.m * c(s) }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.m.norm() <= tol
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { m: &self.m + &rhs.m }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { m: &self.m - &rhs.m }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { m: -&self.m }
    }
}

impl Mul<f64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, s: f64) -> AlgebraElement {
        self.scale(s)
    }
}

/// Element of SU(n).
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    m: CMatrix,
}

impl GroupElement {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        check_square(&m)?;
        let deviation = unitarity_deviation(&m);
        if deviation > tol.unitary {
            return Err(ZqocError::NotUnitary { deviation });
        }
        let deviation = (m.determinant() - c(1.0)).norm();
        if deviation > tol.special {
            return Err(ZqocError::NotSpecial { deviation });
        }
        Ok(Self { m })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: CMatrix::identity(n, n),
        }
    }

    pub(crate) fn from_unchecked(m: CMatrix) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn adjoint(&self) -> GroupElement {
        Self { m: self.m.adjoint() }
    }

    /// ‖self − other‖_F.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        (&self.m - &other.m).norm()
    }

    pub fn determinant(&self) -> Complex64 {
        self.m.determinant()
    }

    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.m)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        GroupElement { m: &self.m * &rhs.m }
    }
}

pub(crate) fn unitarity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    (m.adjoint() * m - CMatrix::identity(n, n)).norm()
}
