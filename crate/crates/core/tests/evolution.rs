use geoqm_core::bloch::{
    energy_uncertainty, fs_distance, hopf_project, pauli_moments, projective_speed, transition_probability, uncertainty_margin,
};
use geoqm_core::flow::{evolve_exact, geodesic_planarity, integrate_numeric, propagator};
use geoqm_core::lie::sigma_dot;
use geoqm_core::sampling::{random_spinor, random_unit3, trial_rng};
use geoqm_core::{FieldParams, Spinor};
use nalgebra::Vector3;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn unit_spinor() -> impl Strategy<Value = Spinor> {
    prop::array::uniform4(-1.0..1.0f64)
        .prop_filter_map("nonzero", |a| Spinor::normalized(Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3])).ok())
}

fn field() -> impl Strategy<Value = Vector3<f64>> {
    prop::array::uniform3(-1.5..1.5f64).prop_map(|a| Vector3::new(a[0], a[1], a[2]))
}

/// `⟨ĥ²⟩ − ⟨ĥ⟩²` straight from the matrix.
fn matrix_variance(phi: &Spinor, p: &FieldParams) -> f64 {
    let h = p.hamiltonian();
    let v = phi.to_vector();
    let mean = v.dotc(&(h * v)).re;
    let sq = v.dotc(&(h * h * v)).re;
    sq - mean * mean
}

proptest! {
    #[test]
    fn exact_flow_is_unitary_and_periodic(phi in unit_spinor(), b in field(), t in 0.0..10.0f64) {
        let p = FieldParams::planck(b);
        prop_assume!(b.norm() > 1e-3);
        let u = propagator(&p, t).unwrap();
        prop_assert!((u * u.adjoint() - nalgebra::Matrix2::identity()).norm() < 1e-12);
        prop_assert!((evolve_exact(&phi, &p, t).unwrap().norm() - 1.0).abs() < 1e-12);
        let period = 2.0 * std::f64::consts::PI / p.omega();
        prop_assert!(evolve_exact(&phi, &p, period).unwrap().distance(&phi) < 1e-10);
    }

    #[test]
    fn exact_flow_composes(phi in unit_spinor(), b in field(), s in 0.0..3.0f64, t in 0.0..3.0f64) {
        let p = FieldParams::planck(b);
        prop_assume!(b.norm() > 1e-3);
        let two = evolve_exact(&evolve_exact(&phi, &p, s).unwrap(), &p, t).unwrap();
        prop_assert!(two.distance(&evolve_exact(&phi, &p, s + t).unwrap()) < 1e-12);
    }

    #[test]
    fn born_distance_law(phi in unit_spinor(), psi in unit_spinor()) {
        let theta = fs_distance(&phi, &psi);
        prop_assert!((transition_probability(&phi, &psi) - (theta / 2.0).cos().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn projection_is_phase_blind(phi in unit_spinor(), a in -3.0..3.0f64) {
        let rotated = phi.scale(Complex64::from_polar(1.0, a));
        prop_assert!((hopf_project(&phi).0 - hopf_project(&rotated).0).norm() < 1e-14);
        prop_assert!((hopf_project(&phi).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn uncertainty_margin_nonnegative(phi in unit_spinor()) {
        prop_assert!(uncertainty_margin(&phi) >= -1e-12);
        let m = pauli_moments(&phi);
        let z = m.expectations.z();
        // (Δσ_x)²(Δσ_y)² ≥ ⟨σ_z⟩², i.e. Δs_x Δs_y ≥ |⟨s_z⟩|/2
        prop_assert!(m.variances.x * m.variances.y - z * z >= -1e-12);
    }

    #[test]
    fn energy_spread_matches_matrix_variance(phi in unit_spinor(), b in field(), mu in 0.2..3.0f64) {
        prop_assume!(b.norm() > 1e-3);
        let p = FieldParams::new(b, mu, 1.0).unwrap();
        let de = energy_uncertainty(&phi, &p);
        prop_assert!((de * de - matrix_variance(&phi, &p)).abs() < 1e-10 * (1.0 + de * de));
    }

    #[test]
    fn projected_speed_matches_finite_difference(phi in unit_spinor(), b in field()) {
        prop_assume!(b.norm() > 1e-2);
        let p = FieldParams::planck(b);
        let h = 1e-5;
        let a = hopf_project(&evolve_exact(&phi, &p, -h).unwrap());
        let c = hopf_project(&evolve_exact(&phi, &p, h).unwrap());
        let fd = (c.0 - a.0).norm() / (2.0 * h);
        prop_assert!((fd - projective_speed(&phi, &p).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn numeric_flow_is_geodesic() {
    let mut rng = trial_rng(11, 0);
    for _ in 0..20 {
        let phi = random_spinor(&mut rng);
        let b = random_unit3(&mut rng) * rng.random_range(0.2..2.0);
        let p = FieldParams::planck(b);
        let traj = integrate_numeric(&phi, &p, 1e-3, 2000).unwrap();
        let w = p.omega();
        for s in traj.arc_speeds() {
            assert!((s - w).abs() < 1e-8);
        }
        assert!(geodesic_planarity(&traj).unwrap() < 1e-9);
        let exact = evolve_exact(&phi, &p, 2.0).unwrap();
        assert!(traj.last().unwrap().distance(&exact) < 1e-8);
    }
}

#[test]
fn eigenstates_have_zero_spread() {
    let p = FieldParams::planck(Vector3::new(0.0, 0.0, 1.3));
    for s in [Spinor::up(), Spinor::down()] {
        assert!(energy_uncertainty(&s, &p).abs() < 1e-12);
        assert!(uncertainty_margin(&s).abs() < 1e-12);
        assert!(matrix_variance(&s, &p).abs() < 1e-12);
    }
    let h = sigma_dot(&Vector3::z());
    assert!((Spinor::up().apply(&h).c1 - Complex64::from(1.0)).norm() < 1e-15);
}
