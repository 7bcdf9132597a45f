//! Single-push collapse.
//!
//! Two sources, one anchored at each σ_z eigenstate, are sampled every tick.
//! The state is held fixed between ticks. A source captures the state when
//! its sample lands inside the box `U` of half-widths `(dθ, dα, dβ)` around
//! the state's coordinates in that source's chart; the first capture decides
//! the outcome. Per tick the capture probability for the source at eigenstate
//! 0 is `cos²(θ₀/2) dV / 2π³`, and `sin²(θ₀/2) dV / 2π³` for the other, so
//! outcome frequencies follow `|c₁|² : |c₂|²`.

use rand::Rng;
use std::f64::consts::{FRAC_PI_8, PI, TAU};

use super::source::{sample_alpha, sample_beta, sample_source, theta_cdf, Eigenstate, SourceSample};
use crate::error::{Error, Result};
use crate::lie::Spinor;

/// Half-widths of the capture box in `(θ, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaptureRegion {
    pub d_theta: f64,
    pub d_alpha: f64,
    pub d_beta: f64,
}

impl CaptureRegion {
    pub fn new(d_theta: f64, d_alpha: f64, d_beta: f64) -> Result<Self> {
        for w in [d_theta, d_alpha, d_beta] {
            if !(w > 0.0 && w <= FRAC_PI_8) {
                return Err(Error::InvalidRegion(w));
            }
        }
        Ok(CaptureRegion { d_theta, d_alpha, d_beta })
    }

    /// Full-width volume `dV = 2dθ · 2dα · 2dβ`.
    pub fn volume(&self) -> f64 {
        8.0 * self.d_theta * self.d_alpha * self.d_beta
    }
}

impl Default for CaptureRegion {
    /// Narrow in θ, where the density varies; wide in the uniform angles.
    fn default() -> Self {
        CaptureRegion { d_theta: 0.05, d_alpha: FRAC_PI_8, d_beta: FRAC_PI_8 }
    }
}

/// `dP = cos²(θ₀/2) dV / 2π³`.
pub fn capture_probability(theta0: f64, region: &CaptureRegion) -> f64 {
    (theta0 / 2.0).cos().powi(2) * region.volume() / (2.0 * PI.powi(3))
}

/// Coordinates of a state in the chart of a source anchored at an eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateCoordinates {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Writes `φ` as `a = cos(θ/2) e^{iβ}`, `b = sin(θ/2) e^{i(β + 2α)}` where
/// `a` is the amplitude on the anchor and `b` the amplitude on the other
/// eigenstate; θ is the Fubini–Study distance from the anchor.
pub fn state_coordinates(phi: &Spinor, anchor: Eigenstate) -> StateCoordinates {
    let (a, b) = match anchor {
        Eigenstate::Zero => (phi.c1, phi.c2),
        Eigenstate::One => (phi.c2, phi.c1),
    };
    let theta = 2.0 * b.norm().atan2(a.norm());
    let beta = if a.norm() > 0.0 { a.arg() } else { 0.0 };
    let rel = if a.norm() > 0.0 && b.norm() > 0.0 { b.arg() - beta } else { 0.0 };
    StateCoordinates { theta, alpha: wrap(rel, TAU) / 2.0, beta }
}

/// Maps `x` into `(−period/2, period/2]`.
fn wrap(x: f64, period: f64) -> f64 {
    let half = period / 2.0;
    let r = (x + half).rem_euclid(period) - half;
    if r <= -half {
        r + period
    } else {
        r
    }
}

fn circular_distance(a: f64, b: f64, period: f64) -> f64 {
    let mut d = (a - b).abs();
    if d >= period {
        d = d.rem_euclid(period);
    }
    d.min(period - d)
}

fn inside(s: &SourceSample, c: &StateCoordinates, r: &CaptureRegion) -> bool {
    circular_distance(s.alpha, c.alpha, PI) <= r.d_alpha
        && circular_distance(s.beta, c.beta, TAU) <= r.d_beta
        && circular_distance(s.theta, c.theta, TAU) <= r.d_theta
}

/// The capture box of one source, with the θ window pulled back through
/// the θ CDF so a uniform draw can be tested without inverting it.
#[derive(Debug, Clone, Copy)]
struct Window {
    coords: StateCoordinates,
    region: CaptureRegion,
    /// Up to two closed intervals of CDF values; a window that wraps past
    /// θ = ±π splits in two.
    u: [(f64, f64); 2],
}

impl Window {
    fn new(coords: StateCoordinates, region: CaptureRegion) -> Self {
        let lo = coords.theta - region.d_theta;
        let hi = coords.theta + region.d_theta;
        let u = if hi > PI {
            [(theta_cdf(lo), 1.0), (0.0, theta_cdf(hi - TAU))]
        } else if lo <= -PI {
            [(0.0, theta_cdf(hi)), (theta_cdf(lo + TAU), 1.0)]
        } else {
            [(theta_cdf(lo), theta_cdf(hi)), (f64::NAN, f64::NAN)]
        };
        Window { coords, region, u }
    }

    /// Draws one source sample coordinate by coordinate, stopping at the
    /// first coordinate outside the box. Coordinates are independent and F
    /// is increasing, so this has the same capture law as a full draw.
    fn reaches<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let c = &self.coords;
        let r = &self.region;
        circular_distance(sample_alpha(rng), c.alpha, PI) <= r.d_alpha
            && circular_distance(sample_beta(rng), c.beta, TAU) <= r.d_beta
            && {
                let u: f64 = rng.random();
                self.u.iter().any(|&(a, b)| a <= u && u <= b)
            }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseOutcome {
    pub eigenstate: Eigenstate,
    /// Ticks until capture, counting the capturing tick.
    pub steps: u64,
    /// Per tick, the samples of the sources at eigenstates 0 and 1.
    pub trace: Option<Vec<[SourceSample; 2]>>,
}

fn decide<R: Rng + ?Sized>(rng: &mut R, hit0: bool, hit1: bool) -> Option<Eigenstate> {
    match (hit0, hit1) {
        (true, false) => Some(Eigenstate::Zero),
        (false, true) => Some(Eigenstate::One),
        // simultaneous capture, O(dV²) per tick
        (true, true) => Some(if rng.random::<bool>() { Eigenstate::Zero } else { Eigenstate::One }),
        (false, false) => None,
    }
}

pub fn run_collapse_trial<R: Rng + ?Sized>(
    phi: &Spinor,
    region: &CaptureRegion,
    rng: &mut R,
    max_steps: u64,
) -> Result<CollapseOutcome> {
    let w0 = Window::new(state_coordinates(phi, Eigenstate::Zero), *region);
    let w1 = Window::new(state_coordinates(phi, Eigenstate::One), *region);
    for step in 1..=max_steps {
        let hit0 = w0.reaches(rng);
        let hit1 = w1.reaches(rng);
        if let Some(e) = decide(rng, hit0, hit1) {
            return Ok(CollapseOutcome { eigenstate: e, steps: step, trace: None });
        }
    }
    Err(Error::NonTermination(max_steps))
}

/// Like [`run_collapse_trial`] but draws and records every source sample.
/// Consumes the random stream differently, so outcomes for a given stream
/// differ from the untraced run.
pub fn run_collapse_trial_traced<R: Rng + ?Sized>(
    phi: &Spinor,
    region: &CaptureRegion,
    rng: &mut R,
    max_steps: u64,
) -> Result<CollapseOutcome> {
    let c0 = state_coordinates(phi, Eigenstate::Zero);
    let c1 = state_coordinates(phi, Eigenstate::One);
    let mut trace = Vec::new();
    for step in 1..=max_steps {
        let s0 = sample_source(rng);
        let s1 = sample_source(rng);
        trace.push([s0, s1]);
        if let Some(e) = decide(rng, inside(&s0, &c0, region), inside(&s1, &c1, region)) {
            return Ok(CollapseOutcome { eigenstate: e, steps: step, trace: Some(trace) });
        }
    }
    Err(Error::NonTermination(max_steps))
}
