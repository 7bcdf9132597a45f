//! Rays of conformally flat metrics `g = η² δ`.
//!
//! With the ray parameter `dτ = ds/η` the geodesic equation becomes the
//! Newton-like system `d²q/dτ² = ½ ∇η²`, a unit mass in the potential
//! `U = −η²/2`. The ray energy `E = ½|v|² − ½η²` is conserved; rays that are
//! geodesics of `g` have `E = 0`. A ray with `E ≠ 0` is a geodesic of the
//! shifted metric `(η² + 2E) δ`.
//!
//! The module also holds the Hamiltonian-dependent metric on C² under which
//! the projection `λφ ↦ [φ]` is scale invariant.

use nalgebra::DVector;
use num_complex::Complex64;
use std::io::Write;

use crate::error::{Error, Result};
use crate::flow::FieldParams;
use crate::lie::{AlgebraElement, CMat2, Spinor};

/// Step of the central-difference gradient.
pub const FD_STEP: f64 = 1e-6;

/// A positive scalar field `η²` on a flat chart.
pub trait RefractiveField: Send + Sync {
    fn eta_sq(&self, q: &DVector<f64>) -> f64;

    /// Analytic gradient of `η²`, if the field knows it.
    fn analytic_gradient(&self, _q: &DVector<f64>) -> Option<DVector<f64>> {
        None
    }

    fn grad_eta_sq(&self, q: &DVector<f64>) -> DVector<f64> {
        self.analytic_gradient(q).unwrap_or_else(|| central_difference(self, q, FD_STEP))
    }
}

pub fn central_difference<F: RefractiveField + ?Sized>(field: &F, q: &DVector<f64>, h: f64) -> DVector<f64> {
    let mut g = DVector::zeros(q.len());
    let mut x = q.clone();
    for k in 0..q.len() {
        x[k] = q[k] + h;
        let fp = field.eta_sq(&x);
        x[k] = q[k] - h;
        let fm = field.eta_sq(&x);
        x[k] = q[k];
        g[k] = (fp - fm) / (2.0 * h);
    }
    g
}

/// Richardson-extrapolated central difference from steps `h` and `2h`, with
/// the size of the correction as an error estimate.
pub fn richardson_gradient<F: RefractiveField + ?Sized>(field: &F, q: &DVector<f64>, h: f64) -> (DVector<f64>, f64) {
    let fine = central_difference(field, q, h);
    let coarse = central_difference(field, q, 2.0 * h);
    let correction = (&fine - &coarse) / 3.0;
    let err = correction.amax();
    (fine + correction, err)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uniform {
    pub eta_sq: f64,
}

impl RefractiveField for Uniform {
    fn eta_sq(&self, _q: &DVector<f64>) -> f64 {
        self.eta_sq
    }

    fn analytic_gradient(&self, q: &DVector<f64>) -> Option<DVector<f64>> {
        Some(DVector::zeros(q.len()))
    }
}

/// `η² = base + 2 g·q`: a uniform force `g` on the ray.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearGradient {
    pub base: f64,
    pub g: DVector<f64>,
}

impl RefractiveField for LinearGradient {
    fn eta_sq(&self, q: &DVector<f64>) -> f64 {
        self.base + 2.0 * self.g.dot(q)
    }

    fn analytic_gradient(&self, _q: &DVector<f64>) -> Option<DVector<f64>> {
        Some(2.0 * &self.g)
    }
}

/// `A exp(−|q − c|²/w²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bump {
    pub amplitude: f64,
    pub center: DVector<f64>,
    pub width: f64,
}

impl Bump {
    pub fn value(&self, q: &DVector<f64>) -> f64 {
        self.amplitude * (-(q - &self.center).norm_squared() / (self.width * self.width)).exp()
    }

    pub fn gradient(&self, q: &DVector<f64>) -> DVector<f64> {
        let d = q - &self.center;
        d * (-2.0 * self.value(q) / (self.width * self.width))
    }
}

/// A base field plus one Gaussian bump.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbed<F> {
    pub base: F,
    pub bump: Bump,
}

impl<F: RefractiveField> RefractiveField for Perturbed<F> {
    fn eta_sq(&self, q: &DVector<f64>) -> f64 {
        self.base.eta_sq(q) + self.bump.value(q)
    }

    fn analytic_gradient(&self, q: &DVector<f64>) -> Option<DVector<f64>> {
        self.base.analytic_gradient(q).map(|g| g + self.bump.gradient(q))
    }
}

/// Gaussian bump on a uniform background.
pub type GaussianBump = Perturbed<Uniform>;

pub fn gaussian_bump(base: f64, amplitude: f64, center: DVector<f64>, width: f64) -> GaussianBump {
    Perturbed { base: Uniform { eta_sq: base }, bump: Bump { amplitude, center, width } }
}

/// A field given only by its values; the gradient is numeric.
pub struct FnField<G>(pub G);

impl<G: Fn(&DVector<f64>) -> f64 + Send + Sync> RefractiveField for FnField<G> {
    fn eta_sq(&self, q: &DVector<f64>) -> f64 {
        (self.0)(q)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayState {
    pub q: DVector<f64>,
    /// `dq/dτ`.
    pub v: DVector<f64>,
    pub tau: f64,
}

impl RayState {
    pub fn new(q: DVector<f64>, v: DVector<f64>) -> Self {
        RayState { q, v, tau: 0.0 }
    }

    /// Ray from `q` heading along `direction` with `|v| = η(q)`, a geodesic
    /// of the field with `E = 0`.
    pub fn geodesic<F: RefractiveField + ?Sized>(q: DVector<f64>, direction: &DVector<f64>, field: &F) -> Result<Self> {
        let e2 = checked_eta_sq(field, &q)?;
        let v = direction.normalize() * e2.sqrt();
        Ok(RayState::new(q, v))
    }
}

fn checked_eta_sq<F: RefractiveField + ?Sized>(field: &F, q: &DVector<f64>) -> Result<f64> {
    let value = field.eta_sq(q);
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::FieldEvaluation { position: q.iter().copied().collect(), value })
    }
}

fn checked_force<F: RefractiveField + ?Sized>(field: &F, q: &DVector<f64>) -> Result<DVector<f64>> {
    checked_eta_sq(field, q)?;
    let g = field.grad_eta_sq(q);
    if g.iter().all(|c| c.is_finite()) {
        Ok(g * 0.5)
    } else {
        Err(Error::FieldEvaluation { position: q.iter().copied().collect(), value: f64::NAN })
    }
}

/// `E = ½|v|² − ½η²(q)`.
pub fn ray_energy<F: RefractiveField + ?Sized>(s: &RayState, field: &F) -> f64 {
    0.5 * s.v.norm_squared() - 0.5 * field.eta_sq(&s.q)
}

/// Velocity-Verlet integration of `q'' = ½∇η²`. Returns `n_steps + 1` states
/// including the start.
pub fn integrate_ray<F: RefractiveField + ?Sized>(
    start: &RayState,
    field: &F,
    dtau: f64,
    n_steps: usize,
) -> Result<Vec<RayState>> {
    let mut out = Vec::with_capacity(n_steps + 1);
    integrate_ray_while(start, field, dtau, n_steps, |s| {
        out.push(s.clone());
        true
    })?;
    Ok(out)
}

/// Like [`integrate_ray`] but hands each state to `keep_going` instead of
/// storing it, stopping early when it returns false.
pub fn integrate_ray_while<F, C>(start: &RayState, field: &F, dtau: f64, n_steps: usize, mut keep_going: C) -> Result<RayState>
where
    F: RefractiveField + ?Sized,
    C: FnMut(&RayState) -> bool,
{
    if !(dtau > 0.0 && dtau.is_finite()) {
        return Err(Error::InvalidStep(dtau));
    }
    if start.q.len() != start.v.len() {
        return Err(Error::DimensionMismatch { expected: start.q.len(), got: start.v.len() });
    }
    let mut s = start.clone();
    let mut a = checked_force(field, &s.q)?;
    if !keep_going(&s) {
        return Ok(s);
    }
    for n in 1..=n_steps {
        let v_half = &s.v + &a * (0.5 * dtau);
        s.q += &v_half * dtau;
        a = checked_force(field, &s.q)?;
        s.v = v_half + &a * (0.5 * dtau);
        s.tau = start.tau + n as f64 * dtau;
        if !keep_going(&s) {
            break;
        }
    }
    Ok(s)
}

/// `Σ η dτ` by the trapezoid rule: the Euclidean length of an `E = 0` ray.
pub fn parametric_arc_length<F: RefractiveField + ?Sized>(rays: &[RayState], field: &F) -> f64 {
    rays.windows(2).map(|w| 0.5 * (field.eta_sq(&w[0].q).sqrt() + field.eta_sq(&w[1].q).sqrt()) * (w[1].tau - w[0].tau)).sum()
}

/// Sum of chord lengths `Σ |q_{n+1} − q_n|`.
pub fn chord_arc_length(rays: &[RayState]) -> f64 {
    rays.windows(2).map(|w| (&w[1].q - &w[0].q).norm()).sum()
}

/// Writes `tau,q1..qn,E`.
pub fn write_ray_csv<F: RefractiveField + ?Sized, W: Write>(rays: &[RayState], field: &F, dim: usize, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    let mut header = vec!["tau".to_string()];
    header.extend((1..=dim).map(|k| format!("q{k}")));
    header.push("E".into());
    wtr.write_record(&header)?;
    for s in rays {
        let mut row = vec![s.tau.to_string()];
        row.extend(s.q.iter().map(|x| x.to_string()));
        row.push(ray_energy(s, field).to_string());
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Search settings for [`design_lens`].
#[derive(Debug, Clone, PartialEq)]
pub struct LensSearch {
    /// Initial heading at the start point.
    pub direction: DVector<f64>,
    pub tolerance: f64,
    /// Bump widths tried in order.
    pub widths: Vec<f64>,
    /// First amplitude tried when bracketing.
    pub initial_amplitude: f64,
    pub max_amplitude: f64,
    pub dtau: f64,
    pub max_bisections: usize,
}

impl LensSearch {
    pub fn along(direction: DVector<f64>) -> Self {
        LensSearch {
            direction,
            tolerance: 1e-3,
            widths: vec![0.1, 0.2, 0.3, 0.5, 0.8],
            initial_amplitude: 1e-3,
            max_amplitude: 100.0,
            dtau: 1e-3,
            max_bisections: 80,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LensDesign<F> {
    pub field: Perturbed<F>,
    /// Distance from the target where the ray crosses the plane through the
    /// target normal to the initial heading.
    pub miss: f64,
}

/// Where a ray from `start` first crosses the plane `(q − origin)·d = depth`.
fn plane_crossing<F: RefractiveField + ?Sized>(
    start: &RayState,
    field: &F,
    dtau: f64,
    origin: &DVector<f64>,
    d: &DVector<f64>,
    depth: f64,
) -> Result<Option<DVector<f64>>> {
    let speed = start.v.norm().max(1e-12);
    // generous budget: several straight-line transit times
    let n_max = ((8.0 * depth / (speed * dtau)).ceil() as usize).max(100);
    let mut prev = start.q.clone();
    let mut hit = None;
    integrate_ray_while(start, field, dtau, n_max, |s| {
        let a = (&prev - origin).dot(d) - depth;
        let b = (&s.q - origin).dot(d) - depth;
        if a < 0.0 && b >= 0.0 {
            let t = a / (a - b);
            hit = Some(&prev + (&s.q - &prev) * t);
            return false;
        }
        prev.copy_from(&s.q);
        true
    })?;
    Ok(hit)
}

/// Finds a Gaussian bump added to `base` that bends the geodesic leaving
/// `phi_a` along `search.direction` through `target`. The bump is centered
/// halfway to the target and shifted toward it; for each width on the ladder
/// the amplitude is bracketed by doubling and refined by bisection on the
/// signed offset at the target plane.
pub fn design_lens<F: RefractiveField + Clone>(
    phi_a: &DVector<f64>,
    target: &DVector<f64>,
    base: &F,
    search: &LensSearch,
) -> Result<LensDesign<F>> {
    let n = phi_a.len();
    for v in [target, &search.direction] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    let to_target = target - phi_a;
    if to_target.norm() < 1e-12 {
        return Err(Error::CoincidentTarget);
    }
    let d = search.direction.normalize();
    let depth = to_target.dot(&d);
    if depth <= 0.0 {
        return Err(Error::LensSearchFailed { best_miss: f64::INFINITY, tolerance: search.tolerance });
    }
    let start = RayState::geodesic(phi_a.clone(), &d, base)?;

    let with_bump = |amplitude: f64, center: &DVector<f64>, width: f64| Perturbed {
        base: base.clone(),
        bump: Bump { amplitude, center: center.clone(), width },
    };
    let crossing = |field: &Perturbed<F>| plane_crossing(&start, field, search.dtau, phi_a, &d, depth);

    let flat = with_bump(0.0, phi_a, 1.0);
    let q0 = match crossing(&flat)? {
        Some(q) => q,
        None => return Err(Error::LensSearchFailed { best_miss: f64::INFINITY, tolerance: search.tolerance }),
    };
    let miss0 = (&q0 - target).norm();
    if miss0 < search.tolerance {
        return Ok(LensDesign { field: flat, miss: miss0 });
    }
    let side = (target - &q0) / miss0;
    let signed = |q: &DVector<f64>| (q - target).dot(&side);

    let mut best = miss0;
    for &w in &search.widths {
        let center = phi_a + &d * (0.5 * depth) + (target - &q0) * 0.5;
        let eval = |a: f64| -> Result<Option<(f64, f64)>> {
            Ok(crossing(&with_bump(a, &center, w))?.map(|q| (signed(&q), (&q - target).norm())))
        };
        let mut lo = 0.0;
        let mut hi = search.initial_amplitude;
        let mut bracket = None;
        while hi <= search.max_amplitude {
            match eval(hi)? {
                Some((s, miss)) => {
                    best = best.min(miss);
                    if s >= 0.0 {
                        bracket = Some((lo, hi));
                        break;
                    }
                }
                None => break,
            }
            lo = hi;
            hi *= 2.0;
        }
        let Some((mut lo, mut hi)) = bracket else { continue };
        for _ in 0..search.max_bisections {
            let mid = 0.5 * (lo + hi);
            match eval(mid)? {
                Some((s, miss)) => {
                    best = best.min(miss);
                    if miss < 0.1 * search.tolerance {
                        break;
                    }
                    if s < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                None => hi = mid,
            }
        }
        // verify the final candidate by a fresh integration
        for a in [0.5 * (lo + hi), lo, hi] {
            let field = with_bump(a, &center, w);
            if let Some(q) = crossing(&field)? {
                let miss = (&q - target).norm();
                best = best.min(miss);
                if miss < search.tolerance {
                    return Ok(LensDesign { field, miss });
                }
            }
        }
    }
    Err(Error::LensSearchFailed { best_miss: best, tolerance: search.tolerance })
}

/// A bump well around `center` and a ray launched from its bottom whose
/// energy lies below the potential everywhere on the sphere of `radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trap {
    pub field: GaussianBump,
    pub start: RayState,
    pub radius: f64,
    pub energy: f64,
    /// `−½ max η²` over the boundary sphere.
    pub barrier: f64,
}

/// Builds a [`Trap`]. `fill` in `(0, 1)` sets the launch kinetic energy as a
/// fraction of the well depth.
pub fn stationary_trap(
    center: DVector<f64>,
    base: f64,
    amplitude: f64,
    width: f64,
    radius: f64,
    fill: f64,
    direction: &DVector<f64>,
) -> Result<Trap> {
    if !(fill > 0.0 && fill < 1.0) {
        return Err(Error::OutOfRange { value: fill, lo: 0.0, hi: 1.0 });
    }
    if amplitude <= 0.0 {
        return Err(Error::OutOfRange { value: amplitude, lo: 0.0, hi: f64::INFINITY });
    }
    let field = gaussian_bump(base, amplitude, center.clone(), width);
    let boundary_max = base + amplitude * (-(radius * radius) / (width * width)).exp();
    let depth = base + amplitude - boundary_max;
    // kinetic energy fill·depth/2 against a barrier of depth/2
    let speed = (fill * depth).sqrt();
    let start = RayState::new(center, direction.normalize() * speed);
    let energy = ray_energy(&start, &field);
    Ok(Trap { field, start, radius, energy, barrier: -0.5 * boundary_max })
}

impl Trap {
    pub fn energy_below_barrier(&self) -> bool {
        self.energy < self.barrier
    }

    /// Largest distance from the center reached along `rays`.
    pub fn max_excursion(&self, rays: &[RayState]) -> f64 {
        rays.iter().map(|s| (&s.q - &self.start.q).norm()).fold(0.0, f64::max)
    }
}

/// A Hermitian 2×2 Hamiltonian together with the value of ħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian {
    pub matrix: CMat2,
    pub hbar: f64,
}

impl Hamiltonian {
    pub fn new(matrix: CMat2, hbar: f64) -> Result<Self> {
        if (matrix - matrix.adjoint()).norm() > 1e-12 * (1.0 + matrix.norm()) {
            return Err(Error::NotHermitian);
        }
        Ok(Hamiltonian { matrix, hbar })
    }

    /// `ĥ = −μ σ̂·B`.
    pub fn from_field(p: &FieldParams) -> Self {
        Hamiltonian { matrix: p.hamiltonian(), hbar: p.hbar }
    }

    /// `ĥ = iX` for `X ∈ su(2)`, with ħ = 1.
    pub fn from_generator(x: &AlgebraElement) -> Self {
        Hamiltonian { matrix: x.matrix() * Complex64::i(), hbar: 1.0 }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let m = &self.matrix;
        let half_tr = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
        let gap = (0.25 * (m[(0, 0)].re - m[(1, 1)].re).powi(2) + m[(0, 1)].norm_sqr()).sqrt();
        [half_tr - gap, half_tr + gap]
    }
}

/// `ħ² Re(ĥ⁻²ξ, η) / ‖φ‖²` for tangent vectors `ξ`, `η` at `φ`.
pub fn hamiltonian_metric(h: &Hamiltonian, phi: &Spinor, xi: &Spinor, eta: &Spinor) -> Result<f64> {
    let [l0, l1] = h.eigenvalues();
    let smallest = l0.abs().min(l1.abs());
    if smallest < 1e-12 * (1.0 + l0.abs().max(l1.abs())) {
        return Err(Error::SingularHamiltonian(l0 * l1));
    }
    let inv = h.matrix.try_inverse().ok_or(Error::SingularHamiltonian(l0 * l1))?;
    let n2 = phi.norm_sqr();
    if n2 == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let inv2 = inv * inv;
    Ok(h.hbar * h.hbar * xi.apply(&inv2).inner(eta).re / n2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;
    use std::f64::consts::PI;

    #[test]
    fn uniform_field_is_straight() {
        let start = RayState::new(dvector![0.1, -0.2, 0.3], dvector![1.0, 0.5, -0.25]);
        let rays = integrate_ray(&start, &Uniform { eta_sq: 1.0 }, 1e-3, 10_000).unwrap();
        assert_eq!(rays.len(), 10_001);
        let dev = rays.iter().map(|s| (&s.q - (&start.q + &start.v * s.tau)).norm()).fold(0.0, f64::max);
        assert!(dev < 1e-10, "{dev}");
    }

    #[test]
    fn linear_gradient_gives_parabola() {
        let g = dvector![0.0, -0.3];
        let field = LinearGradient { base: 4.0, g: g.clone() };
        let start = RayState::new(dvector![0.0, 0.0], dvector![1.0, 1.0]);
        let rays = integrate_ray(&start, &field, 1e-3, 2000).unwrap();
        for s in &rays {
            let exact = &start.q + &start.v * s.tau + &g * (0.5 * s.tau * s.tau);
            assert!((&s.q - exact).norm() < 1e-6);
        }
    }

    #[test]
    fn bump_attracts_off_axis_ray() {
        let field = gaussian_bump(1.0, 0.5, dvector![1.0, 0.0], 0.3);
        let start = RayState::geodesic(dvector![0.0, 0.2], &dvector![1.0, 0.0], &field).unwrap();
        let rays = integrate_ray(&start, &field, 1e-3, 2000).unwrap();
        let end = rays.last().unwrap();
        assert!(end.v[1] < 0.0);
        assert!(end.q[1] < 0.2);
    }

    #[test]
    fn numeric_gradient_matches_analytic() {
        let f = gaussian_bump(1.0, 0.7, dvector![0.3, -0.1], 0.4);
        let q = dvector![0.5, 0.2];
        let numeric = FnField(|x: &DVector<f64>| f.eta_sq(x));
        let exact = f.analytic_gradient(&q).unwrap();
        assert!((numeric.grad_eta_sq(&q) - &exact).amax() < 1e-8);
        let (rich, err) = richardson_gradient(&numeric, &q, 1e-3);
        assert!((rich - exact).amax() < 1e-9);
        assert!(err < 1e-5);
    }

    #[test]
    fn nonpositive_field_is_reported() {
        let f = LinearGradient { base: 1.0, g: dvector![-1.0] };
        let start = RayState::new(dvector![0.0], dvector![2.0]);
        match integrate_ray(&start, &f, 0.01, 1000) {
            Err(Error::FieldEvaluation { position, value }) => {
                assert!(value <= 0.0);
                assert!(position[0] >= 0.5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(integrate_ray(&start, &f, 0.0, 1), Err(Error::InvalidStep(_))));
    }

    #[test]
    fn geodesic_arc_length_is_euclidean() {
        let field = gaussian_bump(1.0, 0.5, dvector![1.0, 0.1], 0.4);
        let start = RayState::geodesic(dvector![0.0, 0.0], &dvector![1.0, 0.0], &field).unwrap();
        let rays = integrate_ray(&start, &field, 1e-3, 2000).unwrap();
        assert!(ray_energy(&start, &field).abs() < 1e-15);
        let s1 = parametric_arc_length(&rays, &field);
        let s2 = chord_arc_length(&rays);
        assert!((s1 - s2).abs() < 1e-4, "{s1} {s2}");
    }

    #[test]
    fn lens_on_axis_target_needs_no_bump() {
        let base = Uniform { eta_sq: 1.0 };
        let d = design_lens(&dvector![0.0, 0.0], &dvector![1.0, 0.0], &base, &LensSearch::along(dvector![1.0, 0.0])).unwrap();
        assert_eq!(d.field.bump.amplitude, 0.0);
        assert!(d.miss < 1e-9);
    }

    #[test]
    fn lens_bends_ray_onto_target() {
        let base = Uniform { eta_sq: 1.0 };
        let target = dvector![1.0, 0.1];
        let d = design_lens(&dvector![0.0, 0.0], &target, &base, &LensSearch::along(dvector![1.0, 0.0])).unwrap();
        assert!(d.miss < 1e-3);
        assert!(d.field.bump.amplitude > 0.0);
        assert!(matches!(
            design_lens(&target, &target, &base, &LensSearch::along(dvector![1.0, 0.0])),
            Err(Error::CoincidentTarget)
        ));
    }

    #[test]
    fn trap_holds_ray() {
        let trap = stationary_trap(dvector![0.5, 0.5], 1.0, 2.0, 0.3, 0.3, 0.6, &dvector![1.0, 0.3]).unwrap();
        assert!(trap.energy_below_barrier());
        let rays = integrate_ray(&trap.start, &trap.field, 1e-3, 10_000).unwrap();
        assert!(trap.max_excursion(&rays) < trap.radius);
    }

    #[test]
    fn metric_examples() {
        let h = Hamiltonian::new(crate::lie::pauli(2), 1.0).unwrap();
        let phi = Spinor::from_angles(0.7, 0.2);
        let xi = Spinor::new(Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.5));
        let g = hamiltonian_metric(&h, &phi, &xi, &xi).unwrap();
        assert!((g - xi.norm_sqr()).abs() < 1e-14);
        let g2 = hamiltonian_metric(&h, &(phi * 2.0), &xi, &xi).unwrap();
        assert!((g2 - g / 4.0).abs() < 1e-14);
        let singular = Hamiltonian::new(crate::lie::pauli(2) + CMat2::identity(), 1.0).unwrap();
        assert!(matches!(hamiltonian_metric(&singular, &phi, &xi, &xi), Err(Error::SingularHamiltonian(_))));
    }

    #[test]
    fn metric_of_field_hamiltonian() {
        let p = FieldParams::new(nalgebra::Vector3::new(0.0, 0.0, 2.0), 1.5, 0.5).unwrap();
        let h = Hamiltonian::from_field(&p);
        let phi = Spinor::from_angles(PI / 3.0, 0.4);
        let xi = Spinor::new(Complex64::new(0.1, 0.2), Complex64::new(0.3, -0.4));
        let eta = Spinor::new(Complex64::new(-0.5, 0.0), Complex64::new(0.2, 0.7));
        let scale = (p.hbar / (p.mu * 2.0)).powi(2);
        let expect = scale * xi.inner(&eta).re;
        assert!((hamiltonian_metric(&h, &phi, &xi, &eta).unwrap() - expect).abs() < 1e-14);
        assert!(Hamiltonian::new(
            CMat2::new(Complex64::i(), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::i()),
            1.0
        )
        .is_err());
    }
}
