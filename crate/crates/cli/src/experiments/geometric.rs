use geoqm_core::bloch::{
    energy_uncertainty, field_angle, fs_distance, hopf_project, projective_speed, transition_probability, uncertainty_margin,
    write_bloch_csv,
};
use geoqm_core::flow::{evolve_exact, geodesic_planarity, integrate_numeric, Trajectory};
use geoqm_core::riemann::{commutator_curvature_identity, sectional_curvature};
use geoqm_core::sampling::{derive_seed, random_algebra, random_spinor, random_unit3, trial_rng};
use geoqm_core::{AlgebraElement, FieldParams, Spinor};
use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use crate::config::Config;
use crate::error::CliError;
use crate::report::{csv_bytes, num, Check, Report};

fn steps_for(t_final: f64, dt: f64) -> Result<usize, CliError> {
    if dt.is_nan() || dt <= 0.0 || t_final < 0.0 {
        return Err(CliError::Config("need dt > 0 and t_final >= 0".into()));
    }
    Ok((t_final / dt).round() as usize)
}

fn field_params(cfg: &Config, b: Vector3<f64>) -> Result<FieldParams, CliError> {
    Ok(FieldParams::new(b, cfg.f64("mu")?, cfg.f64("hbar")?)?)
}

pub(super) fn evolve(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let n = cfg.trials()?;
    let dt = cfg.f64("dt")?;
    let t_final = cfg.f64("t_final")?;
    let field_max = cfg.f64("field_max")?;
    let steps = steps_for(t_final, dt)?;
    let (mut speed_dev, mut planarity, mut terminal, mut drift) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut first: Option<Trajectory> = None;
    for i in 0..n {
        let mut rng = trial_rng(seed, i);
        let phi0 = random_spinor(&mut rng);
        let b = random_unit3(&mut rng) * rng.random_range(0.1 * field_max..=field_max);
        let p = field_params(cfg, b)?;
        let traj = integrate_numeric(&phi0, &p, dt, steps)?;
        let w = p.omega();
        speed_dev = traj.arc_speeds().iter().map(|s| (s - w).abs()).fold(speed_dev, f64::max);
        planarity = planarity.max(geodesic_planarity(&traj)?);
        let exact = evolve_exact(&phi0, &p, traj.times[steps])?;
        terminal = terminal.max(traj.states[steps].distance(&exact));
        drift = drift.max(traj.max_norm_drift);
        if first.is_none() {
            first = Some(traj);
        }
    }
    report.check(Check::at_most("speed_deviation", speed_dev, 1e-8));
    report.check(Check::below("planarity_residual", planarity, 1e-9));
    report.check(Check::below("terminal_error", terminal, 1e-8));
    report.results = json!({ "cases": n, "steps": steps, "max_norm_drift": num(drift) });
    let mut buf = Vec::new();
    first.expect("at least one trial").write_csv(&mut buf)?;
    report.add_file(buf);
    Ok(())
}

pub(super) fn bloch(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let b = Vector3::new(cfg.f64("bx")?, cfg.f64("by")?, cfg.f64("bz")?);
    let p = field_params(cfg, b)?;
    let dt = cfg.f64("dt")?;
    let steps = steps_for(cfg.f64("t_final")?, dt)?;
    let phi0 = Spinor::up();
    let traj = Trajectory::exact(&phi0, &p, dt, steps)?;

    let angle0 = field_angle(&phi0, &p)?;
    let h = 1e-6;
    let (mut norm_err, mut speed_err, mut angle_drift) = (0.0f64, 0.0f64, 0.0f64);
    for (t, s) in traj.times.iter().zip(&traj.states) {
        norm_err = norm_err.max((hopf_project(s).norm() - 1.0).abs());
        let a = hopf_project(&evolve_exact(&phi0, &p, t - h)?);
        let c = hopf_project(&evolve_exact(&phi0, &p, t + h)?);
        let fd = (c.0 - a.0).norm() / (2.0 * h);
        speed_err = speed_err.max((fd - projective_speed(s, &p)?).abs());
        angle_drift = angle_drift.max((field_angle(s, &p)? - angle0).abs());
    }

    let mut rng = trial_rng(derive_seed(seed, 1), 0);
    let mut law_err = 0.0f64;
    for _ in 0..cfg.trials()? {
        let phi = random_spinor(&mut rng);
        let psi = random_spinor(&mut rng);
        let theta = fs_distance(&phi, &psi);
        law_err = law_err.max((transition_probability(&phi, &psi) - (theta / 2.0).cos().powi(2)).abs());
    }

    report.check(Check::at_most("born_distance_error", law_err, 1e-12));
    report.check(Check::at_most("bloch_norm_error", norm_err, 1e-12));
    report.check(Check::at_most("projective_speed_error", speed_err, 1e-6));
    report.check(Check::at_most("field_angle_drift", angle_drift, 1e-10));
    report.results = json!({
        "field_angle": num(angle0),
        "projective_speed": num(projective_speed(&phi0, &p)?),
        "samples": traj.len(),
    });
    let mut buf = Vec::new();
    write_bloch_csv(&traj, &mut buf)?;
    report.add_file(buf);
    Ok(())
}

pub(super) fn curvature(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let e = AlgebraElement::basis;
    let mut planes: Vec<(AlgebraElement, AlgebraElement)> = vec![(e(1), e(2)), (e(2), e(3)), (e(3), e(1))];
    let mut rng = trial_rng(seed, 0);
    for _ in 0..cfg.trials()? {
        planes.push((random_algebra(&mut rng), random_algebra(&mut rng)));
    }
    let mut rows = Vec::with_capacity(planes.len());
    let mut k_err = 0.0f64;
    for (i, (x, y)) in planes.iter().enumerate() {
        let k = sectional_curvature(x, y)?;
        k_err = k_err.max((k - 1.0).abs());
        let mut row = vec![i.to_string()];
        row.extend(x.coords.iter().chain(y.coords.iter()).map(|c| c.to_string()));
        row.push(k.to_string());
        rows.push(row);
    }

    let mut rng = trial_rng(seed, 1);
    let mut id_err = 0.0f64;
    for _ in 0..cfg.u64("pairs")? {
        let x = random_algebra(&mut rng);
        let y = random_algebra(&mut rng);
        let xc = x.coords;
        let y = AlgebraElement::from_coords(y.coords - xc * (xc.dot(&y.coords) / xc.norm_squared()));
        let (lhs, rhs) = commutator_curvature_identity(&x, &y)?;
        id_err = id_err.max((lhs - rhs).abs());
    }

    report.check(Check::at_most("sectional_curvature_error", k_err, 1e-10));
    report.check(Check::at_most("commutator_identity_error", id_err, 1e-10));
    report.results = json!({ "planes": planes.len(), "curvature": 1.0 });
    report.add_file(csv_bytes(&["plane", "x1", "x2", "x3", "y1", "y2", "y3", "k"], rows)?);
    Ok(())
}

/// `⟨ĥ²⟩ − ⟨ĥ⟩²` straight from the Hamiltonian matrix.
fn matrix_variance(phi: &Spinor, p: &FieldParams) -> f64 {
    let h = p.hamiltonian();
    let v = phi.to_vector();
    let mean = v.dotc(&(h * v)).re;
    let sq = v.dotc(&(h * h * v)).re;
    sq - mean * mean
}

pub(super) fn uncertainty(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let mut rng = trial_rng(seed, 0);
    let mut min_margin = f64::INFINITY;
    for _ in 0..cfg.trials()? {
        min_margin = min_margin.min(uncertainty_margin(&random_spinor(&mut rng)));
    }
    let mut eig_margin = 0.0f64;
    for phase in [0.0, 1.0, 2.5] {
        let u = Complex64::from_polar(1.0, phase);
        for s in [Spinor::up().scale(u), Spinor::down().scale(u)] {
            eig_margin = eig_margin.max(uncertainty_margin(&s).abs());
        }
    }

    let mut rng = trial_rng(seed, 1);
    let mut e_err = 0.0f64;
    let mut rows = Vec::new();
    for _ in 0..cfg.u64("energy_trials")? {
        let phi = random_spinor(&mut rng);
        let b = random_unit3(&mut rng) * rng.random_range(0.1..2.0);
        let p = field_params(cfg, b)?;
        let de = energy_uncertainty(&phi, &p);
        let var = matrix_variance(&phi, &p);
        e_err = e_err.max((de * de - var).abs());
        rows.push(vec![field_angle(&phi, &p)?.to_string(), de.to_string(), var.max(0.0).sqrt().to_string()]);
    }

    report.check(Check::at_least("min_margin", min_margin, -1e-12));
    report.check(Check::at_most("eigenstate_margin", eig_margin, 1e-12));
    report.check(Check::at_most("energy_variance_error", e_err, 1e-10));
    report.results = json!({});
    report.add_file(csv_bytes(&["theta", "delta_e", "direct_sd"], rows)?);
    Ok(())
}
