//! Shared fixtures for the kernel benchmarks.

use geoqm_core::lens::{gaussian_bump, GaussianBump, RayState};
use geoqm_core::{FieldParams, Spinor};
use nalgebra::{dvector, Vector3};

/// Unit-strength field tilted off every axis.
pub fn tilted_field() -> FieldParams {
    FieldParams::planck(Vector3::new(0.6, -0.3, 0.74))
}

/// A generic state with Born weight 0.75 on spin-up.
pub fn weighted_state() -> Spinor {
    Spinor::with_weight(0.75).expect("weight in range")
}

pub fn bump_field() -> GaussianBump {
    gaussian_bump(1.0, 0.8, dvector![1.0, 0.25], 0.5)
}

pub fn bump_ray() -> RayState {
    RayState::geodesic(dvector![0.0, 0.0], &dvector![1.0, 0.0], &bump_field()).expect("positive field")
}
