//! Gaussian-smeared point states in R³.

use nalgebra::Vector3;

/// Inner product of two delta states, `exp(−|a − b|²)`.
pub fn delta_overlap(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    (-(a - b).norm_squared()).exp()
}

/// `‖δ_a − δ_b‖² = 2(1 − overlap)`.
pub fn delta_distance_sqr(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    -2.0 * (-(a - b).norm_squared()).exp_m1()
}
