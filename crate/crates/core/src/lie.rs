//! Two-level state algebra.
//!
//! A state is a [`Spinor`] in C². Through the quaternion map [`omega`] the
//! unit spinors are identified with SU(2), and the tangent space at the
//! identity is the Lie algebra su(2), spanned by the generators
//! `ê_k = (i/2) σ_k`. Algebra elements are stored as real coordinates in that
//! basis ([`AlgebraElement`]); matrices are only built on demand.
//!
//! The Killing inner product is normalized as `(X, Y)_K = ½ Tr(X Y†)`, which
//! is the unique choice making `x ↦ Σ 2 x^k ê_k` an isometry from R³
//! ([`embed_r3`]).

use nalgebra::{Matrix2, Vector2, Vector3};
use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::TOL;

pub type C2 = Vector2<Complex64>;
pub type CMat2 = Matrix2<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// The Pauli matrix `σ_k`, `k ∈ {1, 2, 3}`.
pub fn pauli(k: usize) -> CMat2 {
    match k {
        1 => CMat2::new(ZERO, ONE, ONE, ZERO),
        2 => CMat2::new(ZERO, -I, I, ZERO),
        3 => CMat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
    }
}

/// `σ̂·v` as an explicit 2×2 Hermitian matrix.
pub fn sigma_dot(v: &Vector3<f64>) -> CMat2 {
    pauli(1) * Complex64::from(v.x) + pauli(2) * Complex64::from(v.y) + pauli(3) * Complex64::from(v.z)
}

/// A vector of C², written `(c1, c2)` in the σ_z eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Spinor {
    /// Raw constructor; no normalization. Useful for intermediate arithmetic
    /// and tangent vectors.
    pub const fn new(c1: Complex64, c2: Complex64) -> Self {
        Spinor { c1, c2 }
    }

    pub fn from_real(c1: f64, c2: f64) -> Self {
        Spinor::new(Complex64::from(c1), Complex64::from(c2))
    }

    /// Scales `(c1, c2)` onto the unit sphere S³.
    pub fn normalized(c1: Complex64, c2: Complex64) -> Result<Self> {
        let n = (c1.norm_sqr() + c2.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroSpinor);
        }
        Ok(Spinor::new(c1 / n, c2 / n))
    }

    /// Spin-up eigenstate of σ_z, `(1, 0)`.
    pub const fn up() -> Self {
        Spinor::new(ONE, ZERO)
    }

    /// Spin-down eigenstate of σ_z, `(0, 1)`.
    pub const fn down() -> Self {
        Spinor::new(ZERO, ONE)
    }

    /// Unit spinor `(cos(θ/2), e^{iφ} sin(θ/2))` with `|c1|² = cos²(θ/2)`.
    pub fn from_angles(theta: f64, phase: f64) -> Self {
        Spinor::new(Complex64::from((theta / 2.0).cos()), Complex64::from_polar((theta / 2.0).sin(), phase))
    }

    /// Unit spinor with real amplitudes and `|c1|² = p`.
    pub fn with_weight(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange { value: p, lo: 0.0, hi: 1.0 });
        }
        Ok(Spinor::from_real(p.sqrt(), (1.0 - p).sqrt()))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= TOL
    }

    pub fn renormalize(&self) -> Result<Self> {
        Spinor::normalized(self.c1, self.c2)
    }

    /// `(self, other) = Σ self_k · conj(other_k)`; linear in the first slot.
    pub fn inner(&self, other: &Spinor) -> Complex64 {
        self.c1 * other.c1.conj() + self.c2 * other.c2.conj()
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Spinor::new(self.c1 * lambda, self.c2 * lambda)
    }

    pub fn to_vector(&self) -> C2 {
        C2::new(self.c1, self.c2)
    }

    pub fn from_vector(v: &C2) -> Self {
        Spinor::new(v[0], v[1])
    }

    /// The spinor as a point of R⁴: `(Re c1, Im c1, Re c2, Im c2)`.
    pub fn to_real4(&self) -> [f64; 4] {
        [self.c1.re, self.c1.im, self.c2.re, self.c2.im]
    }

    pub fn apply(&self, m: &CMat2) -> Self {
        Spinor::from_vector(&(m * self.to_vector()))
    }

    /// Euclidean distance in C² = R⁴.
    pub fn distance(&self, other: &Spinor) -> f64 {
        (*self - *other).norm()
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Mul<f64> for Spinor {
    type Output = Spinor;
    fn mul(self, rhs: f64) -> Spinor {
        Spinor::new(self.c1 * rhs, self.c2 * rhs)
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

/// Quaternion-form matrix `[[z1, z2], [-conj z2, conj z1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatRep(CMat2);

impl MatRep {
    pub fn matrix(&self) -> &CMat2 {
        &self.0
    }

    pub fn determinant(&self) -> f64 {
        // |z1|² + |z2|², real by construction
        self.0.determinant().re
    }

    /// Left multiplication in SU(2): `omega(a) · omega(b)`.
    pub fn compose(&self, other: &MatRep) -> MatRep {
        MatRep(self.0 * other.0)
    }
}

/// The isomorphism C² → Mat.
pub fn omega(s: &Spinor) -> MatRep {
    MatRep(CMat2::new(s.c1, s.c2, -s.c2.conj(), s.c1.conj()))
}

/// Reads the spinor back off the top row.
pub fn omega_inverse(m: &MatRep) -> Spinor {
    Spinor::new(m.0[(0, 0)], m.0[(0, 1)])
}

/// Element `Σ a_k ê_k` of su(2), stored by its real coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AlgebraElement {
    pub coords: Vector3<f64>,
}

impl AlgebraElement {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        AlgebraElement { coords: Vector3::new(a1, a2, a3) }
    }

    pub fn from_coords(coords: Vector3<f64>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    /// Basis generator `ê_k = (i/2) σ_k`, `k ∈ {1, 2, 3}`.
    pub fn basis(k: usize) -> Self {
        assert!((1..=3).contains(&k), "basis index must be 1, 2 or 3, got {k}");
        let mut c = Vector3::zeros();
        c[k - 1] = 1.0;
        AlgebraElement { coords: c }
    }

    /// `Σ a_k (i/2) σ_k`.
    pub fn matrix(&self) -> CMat2 {
        sigma_dot(&self.coords) * Complex64::new(0.0, 0.5)
    }

    /// Recovers coordinates from an anti-Hermitian traceless matrix.
    pub fn from_matrix(m: &CMat2) -> Result<Self> {
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        if (m + m.adjoint()).iter().any(|z| z.norm() > TOL * scale) {
            return Err(Error::NotInAlgebra("not anti-Hermitian"));
        }
        if m.trace().norm() > TOL * scale {
            return Err(Error::NotInAlgebra("not traceless"));
        }
        // m = (i/2)[[a3, a1 - i a2], [a1 + i a2, -a3]]
        let a3 = 2.0 * m[(0, 0)].im;
        let a1 = 2.0 * m[(0, 1)].im;
        let a2 = 2.0 * m[(0, 1)].re;
        Ok(AlgebraElement::new(a1, a2, a3))
    }

    pub fn killing_norm_sqr(&self) -> f64 {
        killing_inner(self, self)
    }

    pub fn killing_norm(&self) -> f64 {
        self.killing_norm_sqr().sqrt()
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> Self {
        AlgebraElement::from_coords(self.coords + rhs.coords)
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> Self {
        AlgebraElement::from_coords(self.coords - rhs.coords)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> Self {
        AlgebraElement::from_coords(-self.coords)
    }
}

impl Mul<AlgebraElement> for f64 {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_coords(rhs.coords * self)
    }
}

/// `(X, Y)_K = ½ Tr(X Y†)`. In ê-coordinates this is `a·b / 4`.
pub fn killing_inner(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    x.coords.dot(&y.coords) / 4.0
}

/// `[X, Y]`. The structure constants `[ê_k, ê_l] = ε_klm ê_m` make this the
/// cross product of coordinates. For the matrices `(i/2)σ_k` the matrix
/// commutator is the negative of this bracket (it is the bracket of
/// right-invariant fields); quantities built from double brackets and norms
/// do not see the sign.
pub fn commutator(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_coords(x.coords.cross(&y.coords))
}

/// `(σ̂·A)(σ̂·B) = A·B + i σ̂·(A×B)`, returned as `(A·B, A×B)`.
pub fn pauli_product(a: &Vector3<f64>, b: &Vector3<f64>) -> (f64, Vector3<f64>) {
    (a.dot(b), a.cross(b))
}

/// `x ↦ Σ 2 x^k ê_k`; Killing norm equals Euclidean norm.
pub fn embed_r3(x: &Vector3<f64>) -> AlgebraElement {
    AlgebraElement::from_coords(2.0 * x)
}

/// Point of the projective line CP¹ = S², as a real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector(Vector3::new(x, y, z))
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Angle to another Bloch vector in `[0, π]`, via `atan2(|a×b|, a·b)`.
    pub fn angle_to(&self, other: &BlochVector) -> f64 {
        self.0.cross(&other.0).norm().atan2(self.0.dot(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &CMat2, b: &CMat2) -> bool {
        (a - b).iter().all(|z| z.norm() < 1e-14)
    }

    #[test]
    fn omega_examples() {
        assert!(close(omega(&Spinor::up()).matrix(), &CMat2::identity()));
        let m = omega(&Spinor::down());
        assert!(close(m.matrix(), &CMat2::new(ZERO, ONE, -ONE, ZERO)));

        let h = Complex64::from(FRAC_1_SQRT_2);
        let s = Spinor::new(h, I * FRAC_1_SQRT_2);
        let m = omega(&s);
        assert!(close(m.matrix(), &CMat2::new(h, I * FRAC_1_SQRT_2, I * FRAC_1_SQRT_2, h)));
        assert_eq!(omega_inverse(&m), s);
        assert!((m.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn killing_examples() {
        let e1 = AlgebraElement::basis(1);
        let e2 = AlgebraElement::basis(2);
        let e3 = AlgebraElement::basis(3);
        assert!((killing_inner(&e1, &e1) - 0.25).abs() < 1e-15);
        assert_eq!(killing_inner(&e1, &e2), 0.0);
        assert!((killing_inner(&(2.0 * e3), &(2.0 * e3)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn killing_matches_trace_definition() {
        let x = AlgebraElement::new(0.3, -1.2, 2.0);
        let y = AlgebraElement::new(-0.7, 0.4, 1.1);
        let trace = (x.matrix() * y.matrix().adjoint()).trace() * 0.5;
        assert!(trace.im.abs() < 1e-15);
        assert!((trace.re - killing_inner(&x, &y)).abs() < 1e-14);
    }

    #[test]
    fn commutator_examples() {
        let e1 = AlgebraElement::basis(1);
        let e2 = AlgebraElement::basis(2);
        let e3 = AlgebraElement::basis(3);
        assert_eq!(commutator(&e1, &e2), e3);
        assert_eq!(commutator(&e2, &e1), -e3);
        let x = AlgebraElement::new(1.5, -2.0, 0.25);
        assert_eq!(commutator(&x, &x), AlgebraElement::zero());
    }

    #[test]
    fn commutator_is_minus_matrix_commutator() {
        let x = AlgebraElement::new(0.3, -1.2, 2.0);
        let y = AlgebraElement::new(-0.7, 0.4, 1.1);
        let m = x.matrix() * y.matrix() - y.matrix() * x.matrix();
        let c = AlgebraElement::from_matrix(&m).unwrap();
        assert!((c.coords + commutator(&x, &y).coords).norm() < 1e-14);
    }

    #[test]
    fn pauli_product_examples() {
        let z = Vector3::z();
        assert_eq!(pauli_product(&z, &z), (1.0, Vector3::zeros()));
        assert_eq!(pauli_product(&Vector3::x(), &Vector3::y()), (0.0, Vector3::z()));
        let (s, v) = pauli_product(&Vector3::zeros(), &Vector3::new(1.0, 2.0, 3.0));
        assert_eq!(s, 0.0);
        assert_eq!(v, Vector3::zeros());
    }

    #[test]
    fn pauli_product_matches_matrices() {
        let a = Vector3::new(0.2, -1.0, 0.5);
        let b = Vector3::new(1.3, 0.1, -0.4);
        let (s, v) = pauli_product(&a, &b);
        let expected = CMat2::identity() * Complex64::from(s) + sigma_dot(&v) * I;
        assert!(close(&(sigma_dot(&a) * sigma_dot(&b)), &expected));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(embed_r3(&Vector3::zeros()), AlgebraElement::zero());
        let e = embed_r3(&Vector3::x());
        assert_eq!(e, 2.0 * AlgebraElement::basis(1));
        assert!((e.killing_norm() - 1.0).abs() < 1e-15);
        assert!((embed_r3(&Vector3::new(3.0, 4.0, 0.0)).killing_norm() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn from_matrix_rejects_hermitian() {
        assert!(AlgebraElement::from_matrix(&pauli(1)).is_err());
        assert!(AlgebraElement::from_matrix(&(CMat2::identity() * I)).is_err());
    }

    #[test]
    fn normalized_rejects_zero() {
        assert_eq!(Spinor::normalized(ZERO, ZERO), Err(Error::ZeroSpinor));
        let s = Spinor::normalized(Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)).unwrap();
        assert!(s.is_unit());
    }
}
