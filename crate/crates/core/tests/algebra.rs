use geoqm_core::lie::{commutator, embed_r3, killing_inner, omega, omega_inverse, pauli_product, sigma_dot};
use geoqm_core::{AlgebraElement, Spinor};
use nalgebra::Vector3;
use num_complex::Complex64;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

fn vec3() -> impl Strategy<Value = Vector3<f64>> {
    (coord(), coord(), coord()).prop_map(|(a, b, c)| Vector3::new(a, b, c))
}

fn spinor() -> impl Strategy<Value = Spinor> {
    (coord(), coord(), coord(), coord()).prop_map(|(a, b, c, d)| Spinor::new(Complex64::new(a, b), Complex64::new(c, d)))
}

fn algebra() -> impl Strategy<Value = AlgebraElement> {
    vec3().prop_map(AlgebraElement::from_coords)
}

proptest! {
    #[test]
    fn omega_round_trip(s in spinor()) {
        let back = omega_inverse(&omega(&s));
        prop_assert_eq!(back, s);
    }

    #[test]
    fn omega_determinant_is_norm(s in spinor()) {
        let det = omega(&s).determinant();
        prop_assert!((det - s.norm_sqr()).abs() < 1e-12 * (1.0 + s.norm_sqr()));
    }

    #[test]
    fn unit_spinors_map_into_su2(s in spinor()) {
        prop_assume!(s.norm() > 1e-3);
        let u = s.renormalize().unwrap();
        let m = omega(&u);
        prop_assert!((m.determinant() - 1.0).abs() < 1e-12);
        let prod = m.matrix() * m.matrix().adjoint();
        prop_assert!((prod - nalgebra::Matrix2::identity()).norm() < 1e-12);
    }

    #[test]
    fn embedding_is_isometric(x in vec3(), y in vec3()) {
        let k = killing_inner(&embed_r3(&x), &embed_r3(&y));
        prop_assert!((k - x.dot(&y)).abs() < 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn killing_is_half_trace(x in algebra(), y in algebra()) {
        let tr = 0.5 * (x.matrix() * y.matrix().adjoint()).trace();
        prop_assert!((tr.re - killing_inner(&x, &y)).abs() < 1e-12 * (1.0 + x.coords.norm() * y.coords.norm()));
        prop_assert!(tr.im.abs() < 1e-12 * (1.0 + x.coords.norm() * y.coords.norm()));
    }

    #[test]
    fn jacobi_identity(x in algebra(), y in algebra(), z in algebra()) {
        let j = commutator(&commutator(&x, &y), &z) + commutator(&commutator(&y, &z), &x) + commutator(&commutator(&z, &x), &y);
        prop_assert!(j.coords.norm() < 1e-12 * (1.0 + x.coords.norm() * y.coords.norm() * z.coords.norm()));
    }

    #[test]
    fn bracket_is_antisymmetric(x in algebra(), y in algebra()) {
        prop_assert_eq!(commutator(&x, &y), -commutator(&y, &x));
    }

    #[test]
    fn matrix_round_trip(x in algebra()) {
        let m = x.matrix();
        prop_assert!((m + m.adjoint()).norm() < 1e-14 * (1.0 + x.coords.norm()));
        prop_assert!(m.trace().norm() < 1e-14);
        let back = AlgebraElement::from_matrix(&m).unwrap();
        prop_assert!((back.coords - x.coords).norm() < 1e-14 * (1.0 + x.coords.norm()));
    }

    #[test]
    fn pauli_product_matches_matrices(a in vec3(), b in vec3()) {
        let (s, v) = pauli_product(&a, &b);
        let direct = sigma_dot(&a) * sigma_dot(&b);
        let rebuilt = nalgebra::Matrix2::identity() * Complex64::from(s) + sigma_dot(&v) * Complex64::i();
        prop_assert!((direct - rebuilt).norm() < 1e-12 * (1.0 + a.norm() * b.norm()));
    }
}
