//! Geometric quantum mechanics of a two-level system.
//!
//! Schrödinger evolution of a spin in a homogeneous field is geodesic motion
//! on the sphere of states S³ = SU(2) with its Killing metric; the physical
//! states live on the projective line CP¹ = S² (the Bloch sphere); and a
//! measurement is modelled as a stochastic perturbation of the metric whose
//! fluctuating sources reproduce the Born rule.
//!
//! Module map:
//!
//! * [`lie`]: spinors, the quaternion map into SU(2), su(2) and its Killing form
//! * [`riemann`]: Levi-Civita connection and curvature of the Killing metric
//! * [`flow`]: exact and numeric spin evolution, geodesic checks
//! * [`bloch`]: Hopf projection, Fubini–Study distance, uncertainty relations
//! * [`collapse`]: fluctuating sources, capture trials, the absorbing chain
//! * [`lens`]: rays of conformally flat metrics and lens construction
//! * [`pair`]: two-qubit states and the EPR measurement
//!
//! All quantities are in Planck units (ħ = 1) unless a [`flow::FieldParams`]
//! says otherwise.

pub mod bloch;
pub mod collapse;
pub mod error;
pub mod flow;
pub mod lens;
pub mod lie;
pub mod pair;
pub mod riemann;
pub mod sampling;

pub use error::{Error, Result};
pub use flow::{FieldParams, Trajectory};
pub use lie::{AlgebraElement, BlochVector, MatRep, Spinor};

/// Default absolute tolerance for equality checks.
pub const TOL: f64 = 1e-12;
