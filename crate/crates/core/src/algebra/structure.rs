// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use super::basis::Basis;
use crate::error::{Result, ZqocError};

/// C^a_{bd} with [B_b, B_d] = C^a_{bd} B_a.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    m: usize,
    data: Vec<f64>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.m
    }

    /// C^a_{bd}.
    #[inline]
    pub fn get(&self, a: usize, b: usize, d: usize) -> f64 {
        self.data[(a * self.m + b) * self.m + d]
    }

    /// Largest component of the Jacobi identity residual
    /// C^e_{bc}C^a_{ed} + C^e_{cd}C^a_{eb} + C^e_{db}C^a_{ec}.
    pub fn jacobi_residual(&self) -> f64 {
        let m = self.m;
        let mut worst = 0.0_f64;
        for a in 0..m {
            for b in 0..m {
                for cc in 0..m {
                    for d in 0..m {
                        let mut s = 0.0;
                        for e in 0..m {
                            s += self.get(e, b, cc) * self.get(a, e, d)
                                + self.get(e, cc, d) * self.get(a, e, b)
                                + self.get(e, d, b) * self.get(a, e, cc);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// ad_x as an m×m matrix on component vectors: (ad_x)^a_d = C^a_{bd} x^b.
    pub fn ad(&self, x: &nalgebra::DVector<f64>) -> nalgebra::DMatrix<f64> {
        let m = self.m;
        nalgebra::DMatrix::from_fn(m, m, |a, d| (0..m).map(|b| self.get(a, b, d) * x[b]).sum())
    }
}

pub fn structure_constants(basis: &Basis) -> Result<StructureConstants> {
    let m = basis.len();
    for i in 0..m {
        for j in i + 1..m {
            let v = basis.inner(&basis.elements()[i], &basis.elements()[j]);
            let max_off = v.abs() / (basis.norms_sq()[i] * basis.norms_sq()[j]).sqrt();
            if max_off > 1e-10 {
                return Err(ZqocError::NonOrthogonalBasis { max_off });
            }
        }
    }
    let mut data = vec![0.0; m * m * m];
    for b in 0..m {
        for d in b + 1..m {
            let br = basis.elements()[b].bracket(&basis.elements()[d]);
            let comps = basis.components(&br);
            for a in 0..m {
                data[(a * m + b) * m + d] = comps[a];
                data[(a * m + d) * m + b] = -comps[a];
            }
        }
    }
    Ok(StructureConstants { m, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis::{orthonormal_basis, BasisKind};
    use crate::algebra::norm::ConstraintNorm;

    fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
        match (a, b, c) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn su2_is_minus_two_epsilon() {
        let b = orthonormal_basis(2, &ConstraintNorm::killing(0.5).unwrap(), BasisKind::GellMann).unwrap();
        let cs = structure_constants(&b).unwrap();
        for a in 0..3 {
            for x in 0..3 {
                for y in 0..3 {
                    assert!((cs.get(a, x, y) + 2.0 * levi_civita(x, y, a)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn antisymmetric_and_jacobi() {
        for (n, kind) in [
            (2, BasisKind::GellMann),
            (3, BasisKind::GellMann),
            (4, BasisKind::GellMann),
            (4, BasisKind::TensorPauli),
        ] {
            let b = orthonormal_basis(n, &ConstraintNorm::killing(1.0).unwrap(), kind).unwrap();
            let cs = structure_constants(&b).unwrap();
            let m = cs.dim();
            for a in 0..m {
                for x in 0..m {
                    assert_eq!(cs.get(a, x, x), 0.0);
                    for y in 0..m {
                        assert_eq!(cs.get(a, x, y), -cs.get(a, y, x));
                    }
                }
            }
            assert!(cs.jacobi_residual() < 1e-10, "n = {n}");
        }
    }
}
