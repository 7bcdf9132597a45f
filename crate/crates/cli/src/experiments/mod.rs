//! Named experiments. Each one resolves its configuration, runs, and returns
//! a [`Report`] with metrics checked against acceptance limits.

mod geometric;
mod lensing;
mod stochastic;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use geoqm_core::collapse::CaptureRegion;

use crate::config::Config;
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    Evolve,
    Bloch,
    Curvature,
    Uncertainty,
    Born,
    Markov,
    Lens,
    Epr,
    E2Split,
}

impl Experiment {
    pub const ALL: [Experiment; 9] = [
        Experiment::Evolve,
        Experiment::Bloch,
        Experiment::Curvature,
        Experiment::Uncertainty,
        Experiment::Born,
        Experiment::Markov,
        Experiment::Lens,
        Experiment::Epr,
        Experiment::E2Split,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Evolve => "evolve",
            Experiment::Bloch => "bloch",
            Experiment::Curvature => "curvature",
            Experiment::Uncertainty => "uncertainty",
            Experiment::Born => "born",
            Experiment::Markov => "markov",
            Experiment::Lens => "lens",
            Experiment::Epr => "epr",
            Experiment::E2Split => "e2-split",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Experiment::Evolve => "numeric spin evolution is a constant-speed great circle",
            Experiment::Bloch => "Hopf projection, Fubini-Study distance and projected speed",
            Experiment::Curvature => "sectional curvature and the commutator-curvature identity",
            Experiment::Uncertainty => "uncertainty margin and energy spread",
            Experiment::Born => "Born frequencies from capture-region collapse",
            Experiment::Markov => "absorbing-chain collapse: exact solve and Monte Carlo walk",
            Experiment::Lens => "ray integration, lens design and trapping",
            Experiment::Epr => "anti-correlated spin pairs in the singlet sector",
            Experiment::E2Split => "evolve spin-up in a transverse field, then measure",
        }
    }

    /// Default configuration table.
    pub fn defaults(self) -> Config {
        let region = || {
            let r = CaptureRegion::default();
            [
                ("d_theta", r.d_theta.to_string()),
                ("d_alpha", r.d_alpha.to_string()),
                ("d_beta", r.d_beta.to_string()),
                ("max_steps", geoqm_core::collapse::DEFAULT_MAX_STEPS.to_string()),
            ]
        };
        let s = |v: &str| v.to_string();
        let mut d: Vec<(&str, String)> = vec![("seed", s("1"))];
        match self {
            Experiment::Evolve => d.extend([
                ("trials", s("50")),
                ("mu", s("1")),
                ("hbar", s("1")),
                ("field_max", s("2")),
                ("t_final", s("2")),
                ("dt", s("0.001")),
            ]),
            Experiment::Bloch => d.extend([
                ("trials", s("10000")),
                ("bx", s("0.6")),
                ("by", s("0")),
                ("bz", s("0.8")),
                ("mu", s("1")),
                ("hbar", s("1")),
                ("t_final", s(&std::f64::consts::PI.to_string())),
                ("dt", s("0.01")),
            ]),
            Experiment::Curvature => d.extend([("trials", s("100")), ("pairs", s("1000"))]),
            Experiment::Uncertainty => {
                d.extend([("trials", s("10000")), ("energy_trials", s("1000")), ("mu", s("1")), ("hbar", s("1"))])
            }
            Experiment::Born => {
                d.extend([("trials", s("100000")), ("c1sq", s("0.75")), ("phase", s("0")), ("write_outcomes", s("true"))]);
                d.extend(region());
            }
            Experiment::Markov => d.extend([
                ("delta_grid", s("64")),
                ("walk_grid", s("48")),
                ("start_theta", s(&(std::f64::consts::PI / 3.0).to_string())),
                ("trials", s("100000")),
                ("profile_trials", s("2000")),
                ("tolerance", s("0.005")),
            ]),
            Experiment::Lens => d.extend([
                ("dtau", s("0.0001")),
                ("steps", s("10000")),
                ("target_offset", s("0.1")),
                ("tolerance", s("0.001")),
                ("metric_trials", s("1000")),
            ]),
            Experiment::Epr => {
                d.extend([("trials", s("100000")), ("weights", s("0.1,0.25,0.5,0.75,0.9")), ("tolerance", s("0.005"))]);
                d.extend(region());
            }
            Experiment::E2Split => {
                d.extend([
                    ("trials", s("100000")),
                    ("b0", s("1")),
                    ("mu", s("1")),
                    ("hbar", s("1")),
                    ("t_final", s(&std::f64::consts::FRAC_PI_4.to_string())),
                    ("dt", s("0.0001")),
                ]);
                d.extend(region());
            }
        }
        Config::from_defaults(d)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Experiment::ALL.iter().map(|e| e.name()).collect();
            CliError::Usage(format!("unknown experiment `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

/// Resolves `overrides` on top of the defaults and runs the experiment.
pub fn run(exp: Experiment, overrides: &BTreeMap<String, String>) -> Result<Report, CliError> {
    let mut cfg = exp.defaults();
    cfg.apply(overrides)?;
    run_with(exp, &cfg)
}

pub fn run_with(exp: Experiment, cfg: &Config) -> Result<Report, CliError> {
    let seed = cfg.u64("seed")?;
    let mut report = Report::new(exp.name(), seed, cfg.values());
    match exp {
        Experiment::Evolve => geometric::evolve(cfg, &mut report)?,
        Experiment::Bloch => geometric::bloch(cfg, &mut report)?,
        Experiment::Curvature => geometric::curvature(cfg, &mut report)?,
        Experiment::Uncertainty => geometric::uncertainty(cfg, &mut report)?,
        Experiment::Born => stochastic::born(cfg, &mut report)?,
        Experiment::Markov => stochastic::markov(cfg, &mut report)?,
        Experiment::Lens => lensing::lens(cfg, &mut report)?,
        Experiment::Epr => stochastic::epr(cfg, &mut report)?,
        Experiment::E2Split => stochastic::e2_split(cfg, &mut report)?,
    }
    Ok(report)
}

fn region(cfg: &Config) -> Result<CaptureRegion, CliError> {
    Ok(CaptureRegion::new(cfg.f64("d_theta")?, cfg.f64("d_alpha")?, cfg.f64("d_beta")?)?)
}
