//! Fluctuating field sources.
//!
//! A source anchored at an eigenstate wanders over S³ in the chart
//! `(θ, α, β)` centered on its anchor. At every tick the three coordinates
//! are drawn afresh and independently: θ from the density `cos²(θ/2)/π` on
//! `(−π, π]`, α uniform on `(−π/2, π/2]`, β uniform on `(−π, π]`.

use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::OnceLock;

/// Which σ_z eigenstate: `Zero` is `(1, 0)`, `One` is `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigenstate {
    Zero,
    One,
}

impl Eigenstate {
    pub fn index(self) -> usize {
        match self {
            Eigenstate::Zero => 0,
            Eigenstate::One => 1,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Eigenstate::Zero => Eigenstate::One,
            Eigenstate::One => Eigenstate::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceSample {
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceProcess {
    pub anchor: Eigenstate,
}

impl SourceProcess {
    pub fn new(anchor: Eigenstate) -> Self {
        SourceProcess { anchor }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SourceSample {
        sample_source(rng)
    }
}

/// Density of θ, `cos²(θ/2)/π` on `(−π, π]`.
pub fn theta_density(theta: f64) -> f64 {
    (theta / 2.0).cos().powi(2) / PI
}

/// `F(θ) = (θ + sin θ + π) / 2π`.
pub fn theta_cdf(theta: f64) -> f64 {
    (theta + theta.sin() + PI) / TAU
}

const TABLE_POINTS: usize = 4096;
const BISECTION_TOL: f64 = 1e-12;

struct CdfTable {
    theta: Vec<f64>,
    cdf: Vec<f64>,
}

fn table() -> &'static CdfTable {
    static TABLE: OnceLock<CdfTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let theta: Vec<f64> = (0..=TABLE_POINTS).map(|k| -PI + TAU * k as f64 / TABLE_POINTS as f64).collect();
        let mut cdf: Vec<f64> = theta.iter().map(|&t| theta_cdf(t)).collect();
        cdf[0] = 0.0;
        cdf[TABLE_POINTS] = 1.0;
        CdfTable { theta, cdf }
    })
}

/// Solves `F(θ) = u` for `u ∈ [0, 1]` by bisection inside the table bracket.
pub fn inverse_theta_cdf(u: f64) -> f64 {
    let t = table();
    let j = t.cdf.partition_point(|&c| c <= u).clamp(1, TABLE_POINTS);
    let (mut lo, mut hi) = (t.theta[j - 1], t.theta[j]);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if theta_cdf(mid) <= u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn sample_theta<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    inverse_theta_cdf(rng.random::<f64>())
}

/// Uniform on `(−π/2, π/2]`.
pub fn sample_alpha<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    FRAC_PI_2 - PI * rng.random::<f64>()
}

/// Uniform on `(−π, π]`.
pub fn sample_beta<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    PI - TAU * rng.random::<f64>()
}

/// One independent draw of `(θ, α, β)`.
pub fn sample_source<R: Rng + ?Sized>(rng: &mut R) -> SourceSample {
    let alpha = sample_alpha(rng);
    let beta = sample_beta(rng);
    let theta = sample_theta(rng);
    SourceSample { theta, alpha, beta }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_endpoints_and_median() {
        assert!(theta_cdf(-PI).abs() < 1e-15);
        assert!((theta_cdf(PI) - 1.0).abs() < 1e-15);
        assert!((theta_cdf(0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cdf_derivative_is_density() {
        for k in 0..50 {
            let t = -3.0 + 6.0 * k as f64 / 49.0;
            let h = 1e-5;
            let fd = (theta_cdf(t + h) - theta_cdf(t - h)) / (2.0 * h);
            assert!((fd - theta_density(t)).abs() < 1e-9);
        }
    }

    #[test]
    fn inverse_round_trip() {
        for k in 0..=100 {
            let u = k as f64 / 100.0;
            let t = inverse_theta_cdf(u);
            assert!((-PI..=PI).contains(&t));
            assert!((theta_cdf(t) - u).abs() < 1e-12, "u={u} t={t}");
        }
        assert!(inverse_theta_cdf(0.5).abs() < 1e-12);
    }

    #[test]
    fn uniform_ranges() {
        let mut rng = crate::sampling::trial_rng(3, 0);
        for _ in 0..1000 {
            let a = sample_alpha(&mut rng);
            let b = sample_beta(&mut rng);
            assert!(a > -FRAC_PI_2 && a <= FRAC_PI_2);
            assert!(b > -PI && b <= PI);
        }
    }
}
