//! Stochastic measurement: fluctuating sources, capture-region collapse,
//! the absorbing-chain walk and delta-state overlaps.

pub mod batch;
pub mod capture;
pub mod delta;
pub mod markov;
pub mod source;
pub mod stats;

pub use batch::{collapse_batch, CollapseReport, TrialRecord};
pub use capture::{
    capture_probability, run_collapse_trial, run_collapse_trial_traced, state_coordinates, CaptureRegion, CollapseOutcome,
    StateCoordinates,
};
pub use delta::{delta_distance_sqr, delta_overlap};
pub use markov::{absorption_probabilities, build_markov_chain, MarkovChainModel};
pub use source::{sample_source, theta_cdf, theta_density, Eigenstate, SourceProcess, SourceSample};

/// Default cap on ticks per trial.
pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;
