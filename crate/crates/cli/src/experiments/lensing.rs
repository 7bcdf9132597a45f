use geoqm_core::lens::{
    chord_arc_length, design_lens, gaussian_bump, hamiltonian_metric, integrate_ray, parametric_arc_length, ray_energy,
    stationary_trap, write_ray_csv, Hamiltonian, LensSearch, RayState, Uniform,
};
use geoqm_core::sampling::{random_spinor, random_unit3, trial_rng};
use geoqm_core::{Error, FieldParams};
use nalgebra::dvector;
use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use crate::config::Config;
use crate::error::CliError;
use crate::report::{num, Check, Report};

fn straight_line_deviation(dtau: f64, steps: usize) -> Result<f64, CliError> {
    let start = RayState::new(dvector![0.1, -0.2, 0.3], dvector![1.0, 0.5, -0.25]);
    let rays = integrate_ray(&start, &Uniform { eta_sq: 1.0 }, dtau, steps)?;
    Ok(rays.iter().map(|s| (&s.q - (&start.q + &start.v * s.tau)).norm()).fold(0.0, f64::max))
}

/// Largest relative change of the Hamiltonian metric under `φ, ξ, η ↦ λφ, λξ, λη`.
fn metric_scale_error(seed: u64, n: u64) -> Result<f64, CliError> {
    let mut rng = trial_rng(seed, 7);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let b = random_unit3(&mut rng) * rng.random_range(0.2..2.0);
        let p = FieldParams::new(b, rng.random_range(0.5..2.0), rng.random_range(0.5..2.0))?;
        let h = Hamiltonian::from_field(&p);
        let (phi, xi, eta) = (random_spinor(&mut rng), random_spinor(&mut rng), random_spinor(&mut rng));
        let lambda = Complex64::from_polar(rng.random_range(0.1..10.0), rng.random_range(-3.2..3.2));
        let g = hamiltonian_metric(&h, &phi, &xi, &eta)?;
        let gl = hamiltonian_metric(&h, &phi.scale(lambda), &xi.scale(lambda), &eta.scale(lambda))?;
        worst = worst.max((g - gl).abs() / (1.0 + g.abs()));
    }
    Ok(worst)
}

pub(super) fn lens(cfg: &Config, report: &mut Report) -> Result<(), CliError> {
    let seed = cfg.u64("seed")?;
    let dtau = cfg.f64("dtau")?;
    let steps = cfg.usize("steps")?;
    let tol = cfg.f64("tolerance")?;

    let straight = straight_line_deviation(dtau, steps)?;

    let bump = gaussian_bump(1.0, 0.8, dvector![1.0, 0.25], 0.5);
    let probe = RayState::geodesic(dvector![0.0, 0.0], &dvector![1.0, 0.0], &bump)?;
    let rays = integrate_ray(&probe, &bump, dtau, steps)?;
    let e0 = ray_energy(&rays[0], &bump);
    let drift = rays.iter().map(|s| (ray_energy(s, &bump) - e0).abs()).fold(0.0, f64::max);
    let arc_mismatch = (parametric_arc_length(&rays, &bump) - chord_arc_length(&rays)).abs();

    // Bend a ray leaving the origin along x onto a target displaced sideways.
    let base = Uniform { eta_sq: 1.0 };
    let origin = dvector![0.0, 0.0];
    let target = dvector![1.0, cfg.f64("target_offset")?];
    let search = LensSearch { tolerance: tol, ..LensSearch::along(dvector![1.0, 0.0]) };
    let (miss, lens_json, lens_csv) = match design_lens(&origin, &target, &base, &search) {
        Ok(d) => {
            let start = RayState::geodesic(origin.clone(), &search.direction, &d.field)?;
            let n = (1.2 * target[0] / search.dtau).ceil() as usize;
            let ray = integrate_ray(&start, &d.field, search.dtau, n)?;
            let mut buf = Vec::new();
            write_ray_csv(&ray, &d.field, 2, &mut buf)?;
            let b = &d.field.bump;
            let j = json!({
                "amplitude": num(b.amplitude),
                "width": num(b.width),
                "center": b.center.iter().copied().map(num).collect::<Vec<_>>(),
                "miss": num(d.miss),
            });
            (d.miss, j, buf)
        }
        // A failed search is a threshold failure, not a usage error.
        Err(Error::LensSearchFailed { best_miss, .. }) => {
            (best_miss, json!({ "miss": num(best_miss), "failed": true }), b"tau,q1,q2,E\n".to_vec())
        }
        Err(e) => return Err(e.into()),
    };

    let trap = stationary_trap(dvector![0.5, 0.5], 1.0, 2.0, 0.3, 0.3, 0.6, &dvector![1.0, 0.3])?;
    let trapped: Vec<RayState> = integrate_ray(&trap.start, &trap.field, 1e-3, 10_000)?;
    let excursion = trap.max_excursion(&trapped) / trap.radius;

    let scale_err = metric_scale_error(seed, cfg.u64("metric_trials")?)?;

    report.check(Check::below("straight_line_deviation", straight, 1e-10));
    report.check(Check::below("energy_drift", drift, 1e-8));
    report.check(Check::below("lens_miss", miss, tol));
    report.check(Check::at_most("arc_length_mismatch", arc_mismatch, 1e-4));
    report.check(Check::below("trap_energy_margin", trap.energy - trap.barrier, 0.0));
    report.check(Check::below("trap_excursion_ratio", excursion, 1.0));
    report.check(Check::at_most("metric_scale_error", scale_err, 1e-12));
    report.results = json!({
        "lens": lens_json,
        "target": target.iter().copied().map(num).collect::<Vec<_>>(),
        "trap": { "energy": num(trap.energy), "barrier": num(trap.barrier), "radius": num(trap.radius) },
    });
    report.add_file(lens_csv);
    let mut buf = Vec::new();
    write_ray_csv(&trapped, &trap.field, 2, &mut buf)?;
    report.add_file(buf);
    Ok(())
}
