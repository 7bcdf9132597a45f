//! Projective geometry of the two-level system.
//!
//! The Hopf map sends a spinor `(φ₁, φ₂)` to the Bloch vector
//!
//! ```text
//! x = φ₁ φ̄₂ + φ̄₁ φ₂,   y = i(φ₁ φ̄₂ − φ̄₁ φ₂),   z = |φ₂|² − |φ₁|²
//! ```
//!
//! and is the stereographic inverse of the chart `ξ = φ₂/φ₁ = (x+iy)/(1−z)`.
//! With this orientation `(1, 0)` sits at `z = −1`, so the z component is the
//! negative of `⟨σ_z⟩` while x and y are `⟨σ_x⟩`, `⟨σ_y⟩`. Distances, angles
//! and variances do not see the orientation; [`spin_expectation`] gives the
//! physical expectation vector where a direction in space matters.

use nalgebra::Vector3;
use num_complex::Complex64;
use std::io::Write;

use crate::error::{Error, Result};
use crate::flow::{FieldParams, Trajectory};
use crate::lie::{BlochVector, Spinor};

/// Below this `|φ₁|` the affine chart is undefined.
pub const CHART_SINGULARITY_TOL: f64 = 1e-14;

pub fn hopf_project(phi: &Spinor) -> BlochVector {
    let p = phi.c1 * phi.c2.conj();
    BlochVector::new(2.0 * p.re, -2.0 * p.im, phi.c2.norm_sqr() - phi.c1.norm_sqr())
}

/// `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` for a unit spinor.
pub fn spin_expectation(phi: &Spinor) -> Vector3<f64> {
    let b = hopf_project(phi);
    Vector3::new(b.x(), b.y(), -b.z())
}

/// Affine coordinate `ξ = φ₂/φ₁` on CP¹ minus the line through `(0, 1)`.
pub fn inhomogeneous_coord(phi: &Spinor) -> Result<Complex64> {
    let n = phi.c1.norm();
    if n <= CHART_SINGULARITY_TOL {
        return Err(Error::ChartSingularity(n));
    }
    Ok(phi.c2 / phi.c1)
}

/// Fubini–Study distance in `[0, π]`: the angle between Bloch vectors.
pub fn fs_distance(phi: &Spinor, psi: &Spinor) -> f64 {
    hopf_project(phi).angle_to(&hopf_project(psi))
}

/// `|(ψ, φ)|²`.
pub fn transition_probability(phi: &Spinor, psi: &Spinor) -> f64 {
    phi.inner(psi).norm_sqr()
}

/// Angle between the field axis and the spin expectation vector.
pub fn field_angle(phi: &Spinor, p: &FieldParams) -> Result<f64> {
    let n = p.direction()?;
    let s = spin_expectation(phi);
    Ok(n.cross(&s).norm().atan2(n.dot(&s)))
}

/// Speed of the projected flow on S²: `4ω|φ₊||φ₋| = 2ω sin θ`, with `φ±` the
/// components along the field eigenbasis.
pub fn projective_speed(phi0: &Spinor, p: &FieldParams) -> Result<f64> {
    let n = p.direction()?;
    let s = spin_expectation(phi0);
    let cos = n.dot(&s).clamp(-1.0, 1.0);
    // 2|φ₊||φ₋| = sin θ
    let sin = (1.0 - cos * cos).max(0.0).sqrt();
    Ok(2.0 * p.omega() * sin)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliMoments {
    /// Bloch coordinates in the orientation of [`hopf_project`].
    pub expectations: BlochVector,
    /// `(Δσ_x², Δσ_y², Δσ_z²)`.
    pub variances: Vector3<f64>,
}

pub fn pauli_moments(phi: &Spinor) -> PauliMoments {
    let b = hopf_project(phi);
    let sq = b.0.component_mul(&b.0);
    PauliMoments { expectations: b, variances: Vector3::new(1.0 - sq.x, 1.0 - sq.y, 1.0 - sq.z) }
}

/// `(y²+z²)(x²+z²) − z²`, nonnegative on the unit sphere.
pub fn uncertainty_margin(phi: &Spinor) -> f64 {
    let BlochVector(v) = hopf_project(phi);
    let (x2, y2, z2) = (v.x * v.x, v.y * v.y, v.z * v.z);
    (y2 + z2) * (x2 + z2) - z2
}

/// `ΔE = μ‖B‖ sin θ`, θ the angle between field and spin direction.
pub fn energy_uncertainty(phi: &Spinor, p: &FieldParams) -> f64 {
    if p.b.norm() == 0.0 {
        return 0.0;
    }
    let theta = field_angle(phi, p).expect("nonzero field");
    (p.mu * p.b.norm()).abs() * theta.sin()
}

/// Variance of an observable on a state `c_k φ_k + c_l φ_l` with `|c_k|² = ck_sq`.
pub fn variance_on_geodesic(ck_sq: f64, lambda_k: f64, lambda_l: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&ck_sq) {
        return Err(Error::OutOfRange { value: ck_sq, lo: 0.0, hi: 1.0 });
    }
    let cl_sq = 1.0 - ck_sq;
    let mean = ck_sq * lambda_k + cl_sq * lambda_l;
    Ok(ck_sq * lambda_k * lambda_k + cl_sq * lambda_l * lambda_l - mean * mean)
}

/// CSV of the projected trajectory, columns `t, x, y, z`.
pub fn write_bloch_csv<W: Write>(traj: &Trajectory, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["t", "x", "y", "z"])?;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let b = hopf_project(s);
        out.write_record([*t, b.x(), b.y(), b.z()].map(|v| v.to_string()))?;
    }
    out.flush()?;
    Ok(())
}
