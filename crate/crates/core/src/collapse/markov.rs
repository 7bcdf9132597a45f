//! Collapse as a biased walk on a θ grid with absorbing ends.
//!
//! States are `θ_i = iπ/m`. From an interior state the walk steps toward
//! θ = 0 with probability `p_i` and away with `1 − p_i`. The bias is fixed by
//! requiring `h(θ) = cos²(θ/2)` to be harmonic for the chain, which makes the
//! absorption probability at θ = 0 equal to `h(θ_i)`.

use nalgebra::DMatrix;
use rand::Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChainModel {
    /// Grid step `π/m`.
    pub delta: f64,
    /// `θ_i` for `i = 0..=m`.
    pub states: Vec<f64>,
    /// `p_i` for interior `i = 1..m`, stored at index `i − 1`.
    pub toward_zero_prob: Vec<f64>,
}

fn h(theta: f64) -> f64 {
    (theta / 2.0).cos().powi(2)
}

pub fn build_markov_chain(m: usize) -> Result<MarkovChainModel> {
    if m < 2 {
        return Err(Error::ChainTooSmall(m));
    }
    let delta = PI / m as f64;
    let states: Vec<f64> = (0..=m).map(|i| i as f64 * delta).collect();
    // p_i = (h_i − h_{i+1}) / (h_{i−1} − h_{i+1}), simplified with product formulas
    let toward_zero_prob = (1..m)
        .map(|i| {
            let t = states[i];
            ((t + delta / 2.0).sin() / (2.0 * t.sin() * (delta / 2.0).cos())).clamp(0.0, 1.0)
        })
        .collect();
    Ok(MarkovChainModel { delta, states, toward_zero_prob })
}

impl MarkovChainModel {
    /// Grid size `m`; the last state index.
    pub fn m(&self) -> usize {
        self.states.len() - 1
    }

    /// Probability of stepping toward θ = 0 from state `i`. Boundary states
    /// are absorbing and return 0.
    pub fn p(&self, i: usize) -> f64 {
        if i == 0 || i >= self.m() {
            0.0
        } else {
            self.toward_zero_prob[i - 1]
        }
    }

    /// Row-stochastic `(m+1) × (m+1)` transition matrix.
    pub fn transition_matrix(&self) -> DMatrix<f64> {
        let m = self.m();
        let mut t = DMatrix::zeros(m + 1, m + 1);
        t[(0, 0)] = 1.0;
        t[(m, m)] = 1.0;
        for i in 1..m {
            t[(i, i - 1)] = self.p(i);
            t[(i, i + 1)] = 1.0 - self.p(i);
        }
        t
    }

    /// `p_i h_{i−1} + (1 − p_i) h_{i+1} − h_i` for each interior state.
    pub fn harmonicity_residuals(&self) -> Vec<f64> {
        (1..self.m())
            .map(|i| {
                let p = self.p(i);
                p * h(self.states[i - 1]) + (1.0 - p) * h(self.states[i + 1]) - h(self.states[i])
            })
            .collect()
    }

    /// Runs one walk from state `start` until absorption. Returns the
    /// absorbing index (0 or m) and the number of steps taken.
    pub fn walk<R: Rng + ?Sized>(&self, start: usize, rng: &mut R, max_steps: u64) -> Result<(usize, u64)> {
        let m = self.m();
        if start > m {
            return Err(Error::OutOfRange { value: start as f64, lo: 0.0, hi: m as f64 });
        }
        let mut i = start;
        let mut steps = 0;
        while i != 0 && i != m {
            if steps == max_steps {
                return Err(Error::NonTermination(max_steps));
            }
            if rng.random::<f64>() < self.p(i) {
                i -= 1;
            } else {
                i += 1;
            }
            steps += 1;
        }
        Ok((i, steps))
    }
}

/// Solves `u_i = p_i u_{i−1} + (1 − p_i) u_{i+1}` with `u_0 = 1`, `u_m = 0`
/// (Thomas algorithm on the tridiagonal system).
pub fn absorption_probabilities(chain: &MarkovChainModel) -> Result<Vec<f64>> {
    let m = chain.m();
    let n = m - 1;
    let mut u = vec![0.0; m + 1];
    u[0] = 1.0;
    // row k (state i = k+1): −p u_{i−1} + u_i − (1−p) u_{i+1} = 0
    let mut c_prime = vec![0.0; n];
    let mut d_prime = vec![0.0; n];
    for k in 0..n {
        let i = k + 1;
        let p = chain.p(i);
        let lower = -p;
        let upper = -(1.0 - p);
        let rhs = if i == 1 { p } else { 0.0 };
        let (denom, d_in) = if k == 0 { (1.0, rhs) } else { (1.0 - lower * c_prime[k - 1], rhs - lower * d_prime[k - 1]) };
        if denom.abs() < 1e-300 {
            return Err(Error::SingularSystem(i));
        }
        c_prime[k] = upper / denom;
        d_prime[k] = d_in / denom;
    }
    for k in (0..n).rev() {
        let next = if k + 1 < n { u[k + 2] } else { 0.0 };
        u[k + 1] = d_prime[k] - c_prime[k] * next;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::trial_rng;

    #[test]
    fn two_state_grid() {
        let c = build_markov_chain(2).unwrap();
        assert_eq!(c.toward_zero_prob.len(), 1);
        assert!((c.toward_zero_prob[0] - 0.5).abs() < 1e-15);
        assert!(matches!(build_markov_chain(1), Err(Error::ChainTooSmall(1))));
    }

    #[test]
    fn bias_matches_defining_ratio() {
        let c = build_markov_chain(17).unwrap();
        for i in 1..17 {
            let t = &c.states;
            let direct = (h(t[i]) - h(t[i + 1])) / (h(t[i - 1]) - h(t[i + 1]));
            assert!((c.p(i) - direct).abs() < 1e-13);
        }
    }

    #[test]
    fn symmetric_bias() {
        let c = build_markov_chain(30).unwrap();
        for i in 1..30 {
            assert!((c.p(30 - i) - (1.0 - c.p(i))).abs() < 1e-14);
        }
    }

    #[test]
    fn absorption_matches_closed_form() {
        let c = build_markov_chain(64).unwrap();
        let u = absorption_probabilities(&c).unwrap();
        assert_eq!(u[0], 1.0);
        assert_eq!(u[64], 0.0);
        let err = u.iter().zip(&c.states).map(|(ui, &t)| (ui - h(t)).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn transition_rows_sum_to_one() {
        let t = build_markov_chain(9).unwrap().transition_matrix();
        for r in 0..10 {
            assert!((t.row(r).sum() - 1.0).abs() < 1e-15);
        }
        assert_eq!(t[(0, 0)], 1.0);
    }

    #[test]
    fn walk_terminates_at_boundary() {
        let c = build_markov_chain(12).unwrap();
        let mut rng = trial_rng(3, 0);
        for _ in 0..100 {
            let (end, steps) = c.walk(4, &mut rng, 1_000_000).unwrap();
            assert!(end == 0 || end == 12);
            assert!(steps >= 4);
        }
        assert_eq!(c.walk(0, &mut rng, 10).unwrap(), (0, 0));
        assert_eq!(c.walk(6, &mut rng, 2), Err(Error::NonTermination(2)));
    }
}
