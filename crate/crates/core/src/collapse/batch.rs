//! Many independent collapse trials and their counting statistics.

use super::capture::{run_collapse_trial, CaptureRegion};
use super::source::Eigenstate;
use super::stats::binomial_z;
use crate::error::Result;
use crate::lie::Spinor;
use crate::sampling::run_trials;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u64,
    pub eigenstate: Eigenstate,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollapseReport {
    pub n_trials: u64,
    pub seed: u64,
    pub per_eigenstate_counts: [u64; 2],
    /// Born weights `|c₁|²`, `|c₂|²` of the input state.
    pub expected: [f64; 2],
    pub z_scores: [f64; 2],
    pub mean_steps: f64,
}

impl CollapseReport {
    pub fn frequency(&self, e: Eigenstate) -> f64 {
        self.per_eigenstate_counts[e.index()] as f64 / self.n_trials as f64
    }
}

/// Runs `n_trials` single-push trials on `phi`, trial `i` drawing from
/// stream `i` of `seed`.
pub fn collapse_batch(
    phi: &Spinor,
    region: &CaptureRegion,
    seed: u64,
    n_trials: u64,
    max_steps: u64,
) -> Result<(CollapseReport, Vec<TrialRecord>)> {
    let outcomes = run_trials(seed, n_trials, |i, rng| {
        run_collapse_trial(phi, region, rng, max_steps).map(|o| TrialRecord {
            trial: i,
            eigenstate: o.eigenstate,
            steps: o.steps,
        })
    });
    let records = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((summarize(phi, seed, &records), records))
}

pub fn summarize(phi: &Spinor, seed: u64, records: &[TrialRecord]) -> CollapseReport {
    let n = records.len() as u64;
    let mut counts = [0u64; 2];
    let mut steps = 0u64;
    for r in records {
        counts[r.eigenstate.index()] += 1;
        steps += r.steps;
    }
    let w = phi.norm_sqr();
    let expected = [phi.c1.norm_sqr() / w, phi.c2.norm_sqr() / w];
    CollapseReport {
        n_trials: n,
        seed,
        per_eigenstate_counts: counts,
        expected,
        z_scores: [binomial_z(counts[0], n, expected[0]), binomial_z(counts[1], n, expected[1])],
        mean_steps: if n > 0 { steps as f64 / n as f64 } else { 0.0 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_is_reproducible() {
        let phi = Spinor::with_weight(0.3).unwrap();
        let r = CaptureRegion::default();
        let (a, ra) = collapse_batch(&phi, &r, 9, 300, 1_000_000).unwrap();
        let (b, rb) = collapse_batch(&phi, &r, 9, 300, 1_000_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(ra, rb);
        assert_eq!(a.per_eigenstate_counts[0] + a.per_eigenstate_counts[1], 300);
        assert!((a.expected[0] - 0.3).abs() < 1e-12);
    }
}
