use geoqm_core::collapse::{absorption_probabilities, build_markov_chain, collapse_batch, Eigenstate};
use geoqm_core::flow::{evolve_exact, integrate_numeric, Trajectory};
use geoqm_core::pair::{epr_batch, SingletSectorState};
use geoqm_core::sampling::{derive_seed, run_trials};
use geoqm_core::{FieldParams, Spinor};
use nalgebra::Vector3;
use num_complex::Complex64;
use serde_json::json;

use super::region;
use crate::config::Config;
use crate::error::CliError;
use crate::report::{csv_bytes, num, Check, Report};

const Z_LIMIT: f64 = 3.0;

pub(super) fn born(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let n = cfg.trials()?;
    let c1sq = cfg.f64("c1sq")?;
    if !(0.0..=1.0).contains(&c1sq) {
        return Err(CliError::Config(format!("`c1sq` = {c1sq} must lie in [0, 1]")));
    }
    let phi = Spinor::new(Complex64::from(c1sq.sqrt()), Complex64::from_polar((1.0 - c1sq).sqrt(), cfg.f64("phase")?));
    let (r, records) = collapse_batch(&phi, &region(cfg)?, seed, n, cfg.u64("max_steps")?)?;

    report.check(Check::at_most("abs_z_zero", r.z_scores[0].abs(), Z_LIMIT));
    report.check(Check::at_most("abs_z_one", r.z_scores[1].abs(), Z_LIMIT));
    report.results = json!({
        "n_trials": r.n_trials,
        "seed": r.seed,
        "per_eigenstate_counts": r.per_eigenstate_counts,
        "expected": r.expected.map(num),
        "frequency": [num(r.frequency(Eigenstate::Zero)), num(r.frequency(Eigenstate::One))],
        "z_scores": r.z_scores.map(num),
        "mean_steps": num(r.mean_steps),
    });
    if cfg.bool("write_outcomes")? {
        let rows = records.iter().map(|t| vec![t.trial.to_string(), t.eigenstate.index().to_string(), t.steps.to_string()]);
        report.add_file(csv_bytes(&["trial", "eigenstate", "steps"], rows)?);
    }
    Ok(())
}

pub(super) fn markov(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let exact_chain = build_markov_chain(cfg.usize("delta_grid")?)?;
    let u = absorption_probabilities(&exact_chain)?;
    let exact_err = exact_chain.states.iter().zip(&u).map(|(t, ui)| (ui - (t / 2.0).cos().powi(2)).abs()).fold(0.0, f64::max);

    let chain = build_markov_chain(cfg.usize("walk_grid")?)?;
    let theta0 = cfg.f64("start_theta")?;
    let pos = theta0 / chain.delta;
    let start = pos.round();
    if (pos - start).abs() > 1e-9 || start < 0.0 || start > chain.m() as f64 {
        return Err(CliError::Config(format!("`start_theta` = {theta0} is not a point of the {}-step grid", chain.m())));
    }
    let start = start as usize;
    let n = cfg.trials()?;
    let ends = run_trials(seed, n, |_, rng| chain.walk(start, rng, u64::MAX).map(|(end, _)| end));
    let hits = ends.into_iter().collect::<Result<Vec<_>, _>>()?.iter().filter(|&&e| e == 0).count();
    let freq = hits as f64 / n as f64;
    let target = (theta0 / 2.0).cos().powi(2);

    let walk_u = absorption_probabilities(&chain)?;
    let per_state = cfg.u64("profile_trials")?;
    let mut rows = Vec::with_capacity(chain.m() + 1);
    for (i, theta) in chain.states.iter().enumerate() {
        let mc = if per_state == 0 {
            f64::NAN
        } else {
            let ends =
                run_trials(derive_seed(seed, i as u64 + 1), per_state, |_, rng| chain.walk(i, rng, u64::MAX).map(|(e, _)| e));
            let h = ends.into_iter().collect::<Result<Vec<_>, _>>()?.iter().filter(|&&e| e == 0).count();
            h as f64 / per_state as f64
        };
        rows.push(vec![theta.to_string(), walk_u[i].to_string(), mc.to_string()]);
    }

    report.check(Check::at_most("exact_absorption_error", exact_err, 1e-10));
    report.check(Check::at_most("walk_frequency_error", (freq - target).abs(), cfg.f64("tolerance")?));
    report.results = json!({
        "start_index": start,
        "walk_frequency": num(freq),
        "expected": num(target),
        "exact_at_start": num(walk_u[start]),
    });
    report.add_file(csv_bytes(&["theta", "exact", "mc_frequency"], rows)?);
    Ok(())
}

pub(super) fn epr(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let n = cfg.trials()?;
    let tol = cfg.f64("tolerance")?;
    let region = region(cfg)?;
    let max_steps = cfg.u64("max_steps")?;
    let mut violations = 0u64;
    let mut worst = 0.0f64;
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for (k, &w) in cfg.f64_list("weights")?.iter().enumerate() {
        let state = if w == 0.5 { SingletSectorState::singlet() } else { SingletSectorState::with_weight(w)? };
        let (r, _) = epr_batch(&state, &region, derive_seed(seed, k as u64), n, max_steps)?;
        violations += r.anti_correlation_violations + r.sector_violations;
        let f = r.frequency_plus_minus();
        worst = worst.max((f - r.expected_plus_minus).abs());
        results.push(json!({
            "weight": num(w),
            "seed": r.seed,
            "counts_plus_minus": r.counts_plus_minus,
            "counts_minus_plus": r.counts_minus_plus,
            "anti_correlation_violations": r.anti_correlation_violations,
            "sector_violations": r.sector_violations,
            "frequency_plus_minus": num(f),
            "z_score": num(r.z_score),
        }));
        rows.push(vec![
            w.to_string(),
            r.counts_plus_minus.to_string(),
            r.counts_minus_plus.to_string(),
            f.to_string(),
            r.z_score.to_string(),
            r.anti_correlation_violations.to_string(),
        ]);
    }
    report.check(Check::at_most("violations", violations as f64, 0.0));
    report.check(Check::at_most("max_frequency_error", worst, tol));
    report.results = json!({ "n_trials": n, "states": results });
    report.add_file(csv_bytes(&["weight", "plus_minus", "minus_plus", "frequency", "z", "violations"], rows)?);
    Ok(())
}

pub(super) fn e2_split(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let (b0, mu, hbar) = (cfg.f64("b0")?, cfg.f64("mu")?, cfg.f64("hbar")?);
    // The field points along −Y so that spin-up turns toward (1, 1)/√2.
    let p = FieldParams::new(Vector3::new(0.0, -b0, 0.0), mu, hbar)?;
    let t_final = cfg.f64("t_final")?;
    let dt = cfg.f64("dt")?;
    if dt.is_nan() || dt <= 0.0 || t_final < 0.0 {
        return Err(CliError::Config("need dt > 0 and t_final >= 0".into()));
    }
    let steps = (t_final / dt).round() as usize;
    let phi0 = Spinor::up();

    // Independent closed form: a real rotation by ω t in the (up, down) plane.
    let w_t = mu * b0 * t_final / hbar;
    let target = Spinor::from_real(w_t.cos(), w_t.sin());
    let exact = evolve_exact(&phi0, &p, t_final)?;
    let numeric: Trajectory = if steps == 0 {
        Trajectory::exact(&phi0, &p, dt, 0)?
    } else {
        integrate_numeric(&phi0, &p, t_final / steps as f64, steps)?
    };
    let last = *numeric.last().expect("trajectory has a start point");

    let (r, _) = collapse_batch(&exact, &region(cfg)?, seed, cfg.trials()?, cfg.u64("max_steps")?)?;

    report.check(Check::at_most("exact_distance", exact.distance(&target), 1e-10));
    report.check(Check::at_most("numeric_distance", last.distance(&target), 1e-8));
    report.check(Check::at_most("abs_z_zero", r.z_scores[0].abs(), Z_LIMIT));
    report.check(Check::at_most("abs_z_one", r.z_scores[1].abs(), Z_LIMIT));
    report.results = json!({
        "terminal_state": [num(exact.c1.re), num(exact.c1.im), num(exact.c2.re), num(exact.c2.im)],
        "n_trials": r.n_trials,
        "per_eigenstate_counts": r.per_eigenstate_counts,
        "expected": r.expected.map(num),
        "frequency": [num(r.frequency(Eigenstate::Zero)), num(r.frequency(Eigenstate::One))],
        "z_scores": r.z_scores.map(num),
    });
    let mut buf = Vec::new();
    numeric.write_csv(&mut buf)?;
    report.add_file(buf);
    Ok(())
}
