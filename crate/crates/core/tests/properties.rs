// Copyright 2026 The zqoc Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

use zqoc::algebra::{expm, logm_su, orthonormal_basis, schatten, AlgebraElement, Basis, BasisKind, ConstraintNorm};
use zqoc::navigation::{
    build_randers, finsler_navigation_norm, fundamental_tensor, randers_norm, Metric, NavigationData,
};

fn killing_basis(n: usize) -> Basis {
    orthonormal_basis(n, &ConstraintNorm::killing(1.0).unwrap(), BasisKind::GellMann).unwrap()
}

fn components(m: usize, scale: f64) -> impl Strategy<Value = DVector<f64>> {
    prop::collection::vec(-scale..scale, m).prop_map(DVector::from_vec)
}

/// Largest |eigenvalue| of the Hermitian matrix iA.
fn spectral_radius(a: &AlgebraElement) -> f64 {
    let h = a.hamiltonian();
    let n = h.nrows();
    // The real embedding [[Re, −Im], [Im, Re]] is symmetric with each eigenvalue doubled.
    let real = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = h[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    real.symmetric_eigenvalues().amax()
}

/// Weak-wind drift: h-norm in [0, 0.8).
fn drift(n: usize) -> impl Strategy<Value = AlgebraElement> {
    let m = n * n - 1;
    (components(m, 1.0), 0.0..0.8f64).prop_map(move |(v, w)| {
        let basis = killing_basis(n);
        let len = v.norm().max(1e-9);
        basis.from_components(&(v * (w / len)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_log_round_trip(v in components(8, 1.2)) {
        let basis = killing_basis(3);
        let a = basis.from_components(&v);
        prop_assume!(spectral_radius(&a) < 0.95 * std::f64::consts::PI);
        let back = logm_su(&expm(&a).unwrap()).unwrap();
        prop_assert!((&back.log - &a).frobenius_norm() < 1e-9);
    }

    #[test]
    fn killing_inner_is_symmetric_bilinear(
        x in components(3, 2.0), y in components(3, 2.0), z in components(3, 2.0),
        s in -3.0..3.0f64, kappa in 0.1..4.0f64,
    ) {
        let h = ConstraintNorm::killing(kappa).unwrap();
        let b = killing_basis(2);
        let (x, y, z) = (b.from_components(&x), b.from_components(&y), b.from_components(&z));
        let lhs = h.inner(&(&x.scale(s) + &y), &z).unwrap();
        let rhs = s * h.inner(&x, &z).unwrap() + h.inner(&y, &z).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
        prop_assert!((h.inner(&x, &y).unwrap() - h.inner(&y, &x).unwrap()).abs() < 1e-12);
        prop_assert!(h.inner(&x, &x).unwrap() >= 0.0);
    }

    #[test]
    fn gram_inner_matches_its_matrix(d in prop::collection::vec(0.2..3.0f64, 3), x in components(3, 1.0), y in components(3, 1.0)) {
        let g = DMatrix::from_diagonal(&DVector::from_vec(d));
        let h = ConstraintNorm::gram(2, BasisKind::GellMann, g.clone()).unwrap();
        let b = orthonormal_basis(2, &h, BasisKind::GellMann).unwrap();
        let (xa, ya) = (b.from_components(&x), b.from_components(&y));
        // Orthonormal components turn h into the Euclidean dot product.
        prop_assert!((h.inner(&xa, &ya).unwrap() - x.dot(&y)).abs() < 1e-10);
    }

    #[test]
    fn schatten_is_a_norm(
        x in components(8, 1.0), y in components(8, 1.0), s in -3.0..3.0f64,
        p in prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(f64::INFINITY)],
    ) {
        let norm = ConstraintNorm::schatten(p, 1.0).unwrap();
        let b = killing_basis(3);
        let (xa, ya) = (b.from_components(&x), b.from_components(&y));
        let nx = schatten(&norm, &xa).unwrap();
        let ny = schatten(&norm, &ya).unwrap();
        prop_assert!(schatten(&norm, &(&xa + &ya)).unwrap() <= nx + ny + 1e-10);
        prop_assert!((schatten(&norm, &xa.scale(s)).unwrap() - s.abs() * nx).abs() < 1e-10);
        prop_assert!(nx > 0.0 || x.norm() < 1e-12);
    }

    #[test]
    fn randers_unit_sphere_is_shifted_h_sphere(w in drift(2), u in components(3, 1.0)) {
        prop_assume!(u.norm() > 1e-3);
        let h = ConstraintNorm::killing(1.0).unwrap();
        let basis = killing_basis(2);
        let f = build_randers(&NavigationData::new(h, w.clone()).unwrap(), &basis).unwrap();
        let unit = basis.from_components(&(&u / u.norm()));
        prop_assert!((randers_norm(&f, &(&w + &unit)) - 1.0).abs() < 1e-10);
        prop_assert!(f.beta_alpha_norm().unwrap() < 1.0);
    }

    #[test]
    fn randers_is_positively_homogeneous(w in drift(3), x in components(8, 1.0), s in 0.01..10.0f64) {
        let h = ConstraintNorm::killing(1.0).unwrap();
        let basis = killing_basis(3);
        let f = build_randers(&NavigationData::new(h, w).unwrap(), &basis).unwrap();
        let a = basis.from_components(&x);
        let fa = randers_norm(&f, &a);
        prop_assert!((randers_norm(&f, &a.scale(s)) - s * fa).abs() < 1e-10 * (1.0 + s * fa));
        prop_assert!(fa >= 0.0);
    }

    #[test]
    fn navigation_norm_agrees_with_randers(w in drift(2), x in components(3, 1.0)) {
        prop_assume!(x.norm() > 1e-2);
        let h = ConstraintNorm::killing(1.0).unwrap();
        let basis = killing_basis(2);
        let nav = NavigationData::new(h, w).unwrap();
        let f = build_randers(&nav, &basis).unwrap();
        let a = basis.from_components(&x);
        let pointwise = finsler_navigation_norm(&nav, &a).unwrap();
        let shen = randers_norm(&f, &a);
        prop_assert!((pointwise - shen).abs() < 1e-8 * shen.max(1.0), "{pointwise} vs {shen}");
    }

    #[test]
    fn fundamental_tensor_is_positive_definite(w in drift(2), x in components(3, 1.0)) {
        prop_assume!(x.norm() > 1e-2);
        let h = ConstraintNorm::killing(1.0).unwrap();
        let basis = killing_basis(2);
        let f = build_randers(&NavigationData::new(h, w).unwrap(), &basis).unwrap();
        let g = fundamental_tensor(&f, &basis.from_components(&x)).unwrap();
        prop_assert!((&g - g.transpose()).amax() < 1e-6);
        let min = g.clone().symmetric_eigen().eigenvalues.min();
        prop_assert!(min > 0.0, "min eigenvalue {min}");
        // g_x(x, x) = F(x)².
        let fx = f.eval_components(&x).unwrap();
        prop_assert!((x.dot(&(&g * &x)) - fx * fx).abs() < 1e-5 * (1.0 + fx * fx));
    }
}
