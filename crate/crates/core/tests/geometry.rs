use geoqm_core::lie::{embed_r3, killing_inner};
use geoqm_core::riemann::{commutator_curvature_identity, curvature, sectional_curvature};
use geoqm_core::sampling::{random_algebra, trial_rng};
use geoqm_core::{AlgebraElement, Spinor};
use nalgebra::Vector3;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Point at Killing distance `r` from the identity along `dir`, read off the
/// matrix exponential rather than any closed form.
fn exp_point(dir: &Vector3<f64>, r: f64) -> Spinor {
    let m = embed_r3(&(dir * r)).matrix().exp();
    Spinor::new(m[(0, 0)], m[(0, 1)])
}

/// Perimeter of the geodesic circle of radius `r` in the plane `(u, v)`,
/// measured by chords in the embedding.
fn circle_perimeter(u: &Vector3<f64>, v: &Vector3<f64>, r: f64, n: usize) -> f64 {
    let pts: Vec<Spinor> = (0..=n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            exp_point(&(u * a.cos() + v * a.sin()), r)
        })
        .collect();
    pts.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

/// Solves `C = 2π sin(r√K)/√K` for K.
fn curvature_from_perimeter(c: f64, r: f64) -> f64 {
    let f = |k: f64| 2.0 * PI * (r * k.sqrt()).sin() / k.sqrt() - c;
    let (mut lo, mut hi) = (0.25, 4.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn geodesic_circles_see_unit_curvature() {
    let planes = [
        (Vector3::<f64>::x(), Vector3::y()),
        (Vector3::y(), Vector3::z()),
        (Vector3::new(1.0, 1.0, 0.0).normalize(), Vector3::new(-1.0, 1.0, 2.0).normalize()),
    ];
    for (u, v) in planes {
        assert!(u.dot(&v).abs() < 1e-15);
        for r in [0.3, 0.8] {
            let c = circle_perimeter(&u, &v, r, 20_000);
            let k = curvature_from_perimeter(c, r);
            let x = embed_r3(&u);
            let y = embed_r3(&v);
            let sec = sectional_curvature(&x, &y).unwrap();
            assert!((k - sec).abs() < 1e-6, "r={r} perimeter curvature {k} vs {sec}");
        }
    }
}

#[test]
fn random_planes_have_unit_curvature() {
    let mut rng = trial_rng(2024, 0);
    for _ in 0..1000 {
        let x = random_algebra(&mut rng);
        let y = random_algebra(&mut rng);
        match sectional_curvature(&x, &y) {
            Ok(k) => assert!((k - 1.0).abs() < 1e-10),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn sectional_curvature_from_curvature_tensor() {
    // (R(X,Y)Y, X) / Gram computed from the full tensor, with the sign of
    // the bracket convention absorbed
    let mut rng = trial_rng(7, 1);
    for _ in 0..200 {
        let x = random_algebra(&mut rng);
        let y = random_algebra(&mut rng);
        let ryyx = killing_inner(&curvature(&x, &y, &y), &x);
        let gram = killing_inner(&x, &x) * killing_inner(&y, &y) - killing_inner(&x, &y).powi(2);
        assert!((ryyx.abs() / gram - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn commutator_identity_on_orthogonal_pairs(a in prop::array::uniform3(-3.0..3.0f64), b in prop::array::uniform3(-3.0..3.0f64)) {
        let x = AlgebraElement::new(a[0], a[1], a[2]);
        let yraw = Vector3::new(b[0], b[1], b[2]);
        let xc = x.coords;
        prop_assume!(xc.norm() > 1e-3);
        let y = AlgebraElement::from_coords(yraw - xc * (xc.dot(&yraw) / xc.norm_squared()));
        prop_assume!(y.coords.norm() > 1e-3);
        let (lhs, rhs) = commutator_curvature_identity(&x, &y).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs));
    }

    #[test]
    fn curvature_is_scale_invariant(a in prop::array::uniform3(-3.0..3.0f64), b in prop::array::uniform3(-3.0..3.0f64), s in 0.1..10.0f64) {
        let x = AlgebraElement::new(a[0], a[1], a[2]);
        let y = AlgebraElement::new(b[0], b[1], b[2]);
        prop_assume!(x.coords.cross(&y.coords).norm() > 1e-2);
        if let (Ok(k1), Ok(k2)) = (sectional_curvature(&x, &y), sectional_curvature(&(s * x), &y)) {
            prop_assert!((k1 - k2).abs() < 1e-9);
        }
    }
}
