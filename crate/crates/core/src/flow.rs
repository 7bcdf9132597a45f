//! Spin evolution in a homogeneous magnetic field.
//!
//! The state obeys `dφ/dt = (i/ħ) μ (σ̂·B) φ`. Because `(σ̂·n)² = I`, the
//! propagator has the closed form `cos θ · I + i sin θ · σ̂·n` with
//! `θ = μ‖B‖t/ħ`, and every orbit is a great circle of S³ traversed at the
//! constant speed `μ‖B‖/ħ`.

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use std::io::Write;

use crate::error::{Error, Result};
use crate::lie::{sigma_dot, CMat2, Spinor};

/// Field, magnetic moment and reduced Planck constant (Planck units by default).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    pub b: Vector3<f64>,
    pub mu: f64,
    pub hbar: f64,
}

impl FieldParams {
    pub fn new(b: Vector3<f64>, mu: f64, hbar: f64) -> Result<Self> {
        if mu == 0.0 || !mu.is_finite() {
            return Err(Error::InvalidField("mu must be nonzero"));
        }
        if hbar <= 0.0 || !hbar.is_finite() {
            return Err(Error::InvalidField("hbar must be positive"));
        }
        if b.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidField("field must be finite"));
        }
        Ok(FieldParams { b, mu, hbar })
    }

    /// `μ = ħ = 1` with the given field.
    pub fn planck(b: Vector3<f64>) -> Self {
        FieldParams { b, mu: 1.0, hbar: 1.0 }
    }

    /// Angular frequency `ω = μ‖B‖/ħ` (taken as a magnitude).
    pub fn omega(&self) -> f64 {
        (self.mu * self.b.norm() / self.hbar).abs()
    }

    /// Unit field direction.
    pub fn direction(&self) -> Result<Vector3<f64>> {
        let n = self.b.norm();
        if n == 0.0 {
            return Err(Error::ZeroField);
        }
        Ok(self.b / n)
    }

    /// The generator `(i/ħ) μ σ̂·B` of the flow.
    pub fn generator(&self) -> CMat2 {
        sigma_dot(&self.b) * Complex64::new(0.0, self.mu / self.hbar)
    }

    /// Hamiltonian matrix `ĥ = −μ σ̂·B`.
    pub fn hamiltonian(&self) -> CMat2 {
        sigma_dot(&self.b) * Complex64::from(-self.mu)
    }
}

/// Closed-form propagator `exp((i/ħ) μ σ̂·B t)`.
pub fn propagator(p: &FieldParams, t: f64) -> Result<CMat2> {
    let n = p.direction()?;
    let theta = p.mu * p.b.norm() * t / p.hbar;
    let (s, c) = theta.sin_cos();
    Ok(CMat2::identity() * Complex64::from(c) + sigma_dot(&n) * Complex64::new(0.0, s))
}

pub fn evolve_exact(phi0: &Spinor, p: &FieldParams, t: f64) -> Result<Spinor> {
    Ok(phi0.apply(&propagator(p, t)?))
}

/// `‖dφ/dt‖ = μ‖B‖/ħ`, independent of the state.
pub fn evolution_speed(p: &FieldParams) -> f64 {
    p.omega()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Spinor>,
    pub meta: FieldParams,
    /// Largest `|‖φ‖ − 1|` seen before per-step renormalization.
    pub max_norm_drift: f64,
}

impl Trajectory {
    /// Samples `evolve_exact` on `t = k·dt`, `k = 0..=n`.
    pub fn exact(phi0: &Spinor, p: &FieldParams, dt: f64, n: usize) -> Result<Self> {
        let mut times = Vec::with_capacity(n + 1);
        let mut states = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let t = k as f64 * dt;
            times.push(t);
            states.push(evolve_exact(phi0, p, t)?);
        }
        Ok(Trajectory { times, states, meta: *p, max_norm_drift: 0.0 })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> Option<&Spinor> {
        self.states.last()
    }

    /// Great-circle arc speed between consecutive samples,
    /// `2 asin(‖φ_{k+1} − φ_k‖ / 2) / Δt`.
    pub fn arc_speeds(&self) -> Vec<f64> {
        self.states
            .windows(2)
            .zip(self.times.windows(2))
            .map(|(s, t)| 2.0 * (0.5 * s[0].distance(&s[1])).min(1.0).asin() / (t[1] - t[0]))
            .collect()
    }

    /// CSV with columns `t, re_c1, im_c1, re_c2, im_c2`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "re_c1", "im_c1", "re_c2", "im_c2"])?;
        for (t, s) in self.times.iter().zip(&self.states) {
            let [a, b, c, d] = s.to_real4();
            out.write_record([t, &a, &b, &c, &d].map(|v| v.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Classical RK4 with renormalization after every step.
pub fn integrate_numeric(phi0: &Spinor, p: &FieldParams, dt: f64, n_steps: usize) -> Result<Trajectory> {
    if dt <= 0.0 || !dt.is_finite() {
        return Err(Error::InvalidStep(dt));
    }
    if dt * p.omega() > 0.1 {
        return Err(Error::StepTooLarge(dt * p.omega()));
    }
    let a = p.generator();
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut y = phi0.to_vector();
    let mut drift: f64 = 0.0;
    times.push(0.0);
    states.push(*phi0);
    for k in 1..=n_steps {
        let k1 = a * y;
        let k2 = a * (y + k1 * Complex64::from(0.5 * dt));
        let k3 = a * (y + k2 * Complex64::from(0.5 * dt));
        let k4 = a * (y + k3 * Complex64::from(dt));
        y += (k1 + k2 * Complex64::from(2.0) + k3 * Complex64::from(2.0) + k4) * Complex64::from(dt / 6.0);
        let norm = y.norm();
        drift = drift.max((norm - 1.0).abs());
        y /= Complex64::from(norm);
        times.push(k as f64 * dt);
        states.push(Spinor::from_vector(&y));
    }
    Ok(Trajectory { times, states, meta: *p, max_norm_drift: drift })
}

/// Third singular value of the `N × 4` real sample matrix. Zero when all
/// samples lie in a 2-plane through the origin, i.e. on a great circle.
pub fn geodesic_planarity(traj: &Trajectory) -> Result<f64> {
    planarity_of(&traj.states)
}

pub fn planarity_of(states: &[Spinor]) -> Result<f64> {
    if states.len() < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: states.len() });
    }
    let m = DMatrix::from_fn(states.len(), 4, |r, c| states[r].to_real4()[c]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv[2])
}
