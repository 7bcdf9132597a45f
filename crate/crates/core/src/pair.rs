//! Two spins: states on S⁷ ⊂ C² ⊗ C² and the EPR measurement.
//!
//! Amplitudes are indexed by σ_z values, `c_pm` multiplying `φ₊ ⊗ ψ₋`. The
//! zero total angular momentum sector `a φ₊⊗ψ₋ + b φ₋⊗ψ₊` is handled as an
//! effective qubit whose poles are the two product states, so a measurement
//! of the first spin is an ordinary single-push collapse.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::collapse::stats::binomial_z;
use crate::collapse::{run_collapse_trial, CaptureRegion, Eigenstate};
use crate::error::{Error, Result};
use crate::lie::Spinor;
use crate::sampling::run_trials;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    pub c_pp: Complex64,
    pub c_pm: Complex64,
    pub c_mp: Complex64,
    pub c_mm: Complex64,
    /// Inert spatial labels of the two particles.
    pub labels: Option<(String, String)>,
}

impl PairState {
    pub fn new(c_pp: Complex64, c_pm: Complex64, c_mp: Complex64, c_mm: Complex64) -> Result<Self> {
        let s = PairState { c_pp, c_pm, c_mp, c_mm, labels: None };
        let n = s.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(s)
    }

    pub fn with_labels(mut self, first: impl Into<String>, second: impl Into<String>) -> Self {
        self.labels = Some((first.into(), second.into()));
        self
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_pp.norm_sqr() + self.c_pm.norm_sqr() + self.c_mp.norm_sqr() + self.c_mm.norm_sqr()
    }

    /// Determinant of the coefficient matrix; zero exactly for product states.
    pub fn determinant(&self) -> Complex64 {
        self.c_pp * self.c_mm - self.c_pm * self.c_mp
    }

    pub fn is_entangled(&self, tol: f64) -> bool {
        self.determinant().norm() > tol
    }
}

fn require_unit(s: &Spinor) -> Result<()> {
    let n = s.norm_sqr();
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// `c_ij = φ_i ψ_j`.
pub fn tensor_state(phi: &Spinor, psi: &Spinor) -> Result<PairState> {
    require_unit(phi)?;
    require_unit(psi)?;
    Ok(PairState { c_pp: phi.c1 * psi.c1, c_pm: phi.c1 * psi.c2, c_mp: phi.c2 * psi.c1, c_mm: phi.c2 * psi.c2, labels: None })
}

pub fn is_entangled(s: &PairState, tol: f64) -> bool {
    s.is_entangled(tol)
}

/// `a φ₊⊗ψ₋ + b φ₋⊗ψ₊`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingletSectorState {
    pub a: Complex64,
    pub b: Complex64,
}

impl SingletSectorState {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let n = a.norm_sqr() + b.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(SingletSectorState { a, b })
    }

    /// Sector state with real amplitudes and `|a|² = p`.
    pub fn with_weight(p: f64) -> Result<Self> {
        let s = Spinor::with_weight(p)?;
        Ok(SingletSectorState { a: s.c1, b: s.c2 })
    }

    /// State of two identical particles, which must have `a = −b`.
    pub fn identical(a: Complex64, b: Complex64) -> Result<Self> {
        if (a + b).norm() > NORM_TOL {
            return Err(Error::NotAntisymmetric);
        }
        Self::new(a, b)
    }

    pub fn singlet() -> Self {
        SingletSectorState { a: Complex64::from(FRAC_1_SQRT_2), b: Complex64::from(-FRAC_1_SQRT_2) }
    }

    pub fn plus_minus() -> Self {
        SingletSectorState { a: Complex64::from(1.0), b: Complex64::from(0.0) }
    }

    pub fn minus_plus() -> Self {
        SingletSectorState { a: Complex64::from(0.0), b: Complex64::from(1.0) }
    }

    pub fn to_pair(&self) -> PairState {
        let zero = Complex64::from(0.0);
        PairState { c_pp: zero, c_pm: self.a, c_mp: self.b, c_mm: zero, labels: None }
    }

    /// The effective qubit `(a, b)` with `φ₊⊗ψ₋` at the pole `(1, 0)`.
    pub fn effective_qubit(&self) -> Spinor {
        Spinor::new(self.a, self.b)
    }

    /// One of the two product states `φ₊⊗ψ₋`, `φ₋⊗ψ₊`.
    pub fn is_classical(&self) -> bool {
        (self.a.norm() == 1.0 && self.b == Complex64::from(0.0)) || (self.b.norm() == 1.0 && self.a == Complex64::from(0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn value(self) -> i8 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairMeasurement {
    pub first: Spin,
    pub second: Spin,
    pub collapsed: SingletSectorState,
    pub steps: u64,
}

/// Measures σ_z of the first particle by a single-push collapse of the
/// effective qubit.
pub fn measure_first_z<R: Rng + ?Sized>(
    s: &SingletSectorState,
    region: &CaptureRegion,
    rng: &mut R,
    max_steps: u64,
) -> Result<PairMeasurement> {
    let n = s.a.norm_sqr() + s.b.norm_sqr();
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(n));
    }
    let out = run_collapse_trial(&s.effective_qubit(), region, rng, max_steps)?;
    Ok(match out.eigenstate {
        Eigenstate::Zero => PairMeasurement {
            first: Spin::Plus,
            second: Spin::Minus,
            collapsed: SingletSectorState::plus_minus(),
            steps: out.steps,
        },
        Eigenstate::One => PairMeasurement {
            first: Spin::Minus,
            second: Spin::Plus,
            collapsed: SingletSectorState::minus_plus(),
            steps: out.steps,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EprReport {
    pub n_trials: u64,
    pub seed: u64,
    pub counts_plus_minus: u64,
    pub counts_minus_plus: u64,
    pub anti_correlation_violations: u64,
    /// Trials whose collapsed state is not one of the two product states.
    pub sector_violations: u64,
    /// `|a|²`.
    pub expected_plus_minus: f64,
    pub z_score: f64,
}

impl EprReport {
    pub fn frequency_plus_minus(&self) -> f64 {
        self.counts_plus_minus as f64 / self.n_trials as f64
    }
}

pub fn epr_batch(
    s: &SingletSectorState,
    region: &CaptureRegion,
    seed: u64,
    n_trials: u64,
    max_steps: u64,
) -> Result<(EprReport, Vec<PairMeasurement>)> {
    let records = run_trials(seed, n_trials, |_, rng| measure_first_z(s, region, rng, max_steps))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut pm = 0;
    let mut violations = 0;
    let mut sector = 0;
    for r in &records {
        if r.first == Spin::Plus {
            pm += 1;
        }
        if r.first.value() != -r.second.value() {
            violations += 1;
        }
        if !r.collapsed.is_classical() {
            sector += 1;
        }
    }
    let expected = s.a.norm_sqr();
    let report = EprReport {
        n_trials,
        seed,
        counts_plus_minus: pm,
        counts_minus_plus: n_trials - pm,
        anti_correlation_violations: violations,
        sector_violations: sector,
        expected_plus_minus: expected,
        z_score: binomial_z(pm, n_trials, expected),
    };
    Ok((report, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::trial_rng;

    fn c(re: f64) -> Complex64 {
        Complex64::from(re)
    }

    #[test]
    fn tensor_examples() {
        let s = tensor_state(&Spinor::up(), &Spinor::down()).unwrap();
        assert_eq!(s.c_pm, c(1.0));
        assert_eq!(s.c_pp + s.c_mp + s.c_mm, c(0.0));
        let h = Spinor::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let s = tensor_state(&h, &Spinor::up()).unwrap();
        assert!((s.c_pp - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.c_mp - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        assert!(!s.is_entangled(1e-12));
        assert!(tensor_state(&(h * 2.0), &h).is_err());
    }

    #[test]
    fn entanglement_examples() {
        let singlet = SingletSectorState::singlet().to_pair();
        assert!(is_entangled(&singlet, 1e-12));
        assert!((singlet.determinant().norm() - 0.5).abs() < 1e-15);
        assert!(!SingletSectorState::plus_minus().to_pair().is_entangled(1e-12));
    }

    #[test]
    fn identical_particles_need_antisymmetry() {
        let a = c(FRAC_1_SQRT_2);
        assert!(SingletSectorState::identical(a, -a).is_ok());
        assert_eq!(SingletSectorState::identical(a, a), Err(Error::NotAntisymmetric));
        assert!(matches!(SingletSectorState::new(c(1.0), c(1.0)), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn classical_sector_state_measures_plus_minus() {
        let r = CaptureRegion::default();
        let mut rng = trial_rng(4, 0);
        for _ in 0..50 {
            let m = measure_first_z(&SingletSectorState::plus_minus(), &r, &mut rng, 10_000_000).unwrap();
            assert_eq!((m.first, m.second), (Spin::Plus, Spin::Minus));
            assert!(m.collapsed.is_classical());
        }
    }

    #[test]
    fn labels_are_carried() {
        let s = SingletSectorState::singlet().to_pair().with_labels("x", "y");
        assert_eq!(s.labels, Some(("x".to_string(), "y".to_string())));
    }
}
