//! Levi-Civita geometry of the Killing metric on SU(2) = S³.
//!
//! Everything is computed from the structure constants of su(2) acting on
//! left-invariant fields: `∇_X Y = ½[X, Y]`, `R(X, Y)Z = ¼[[X, Y], Z]`.
//! In Planck units the resulting sectional curvature is 1 on every plane.

use crate::error::{Error, Result};
use crate::lie::{commutator, killing_inner, AlgebraElement};

/// Below this Gram determinant a plane is treated as degenerate.
pub const DEGENERATE_PLANE_TOL: f64 = 1e-12;
/// Orthogonality precondition for [`commutator_curvature_identity`].
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// `∇_{L_X} L_Y = ½ L_{[X, Y]}`.
pub fn connection_coeff(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    0.5 * commutator(x, y)
}

/// `R(L_X, L_Y) L_Z = ¼ L_{[[X, Y], Z]}`.
pub fn curvature(x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> AlgebraElement {
    0.25 * commutator(&commutator(x, y), z)
}

/// Covariant components `R_{ik,lm} = (R(ê_i, ê_k) ê_l, ê_m)_K`, indices in 1..=3.
pub fn curvature_component(i: usize, k: usize, l: usize, m: usize) -> f64 {
    let b = AlgebraElement::basis;
    killing_inner(&curvature(&b(i), &b(k), &b(l)), &b(m))
}

/// Sectional curvature of the plane spanned by `L_X`, `L_Y`:
/// `¼ ‖[X, Y]‖²_K / (‖X‖²‖Y‖² − (X, Y)²)`.
pub fn sectional_curvature(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    let xx = killing_inner(x, x);
    let yy = killing_inner(y, y);
    let xy = killing_inner(x, y);
    let gram = xx * yy - xy * xy;
    if gram < DEGENERATE_PLANE_TOL {
        return Err(Error::DegeneratePlane(gram));
    }
    let c = commutator(x, y);
    Ok(0.25 * killing_inner(&c, &c) / gram)
}

/// Both sides of `‖[X, Y]‖²_K = 4 R(p) ‖X‖²_K ‖Y‖²_K` for Killing-orthogonal
/// `X`, `Y`.
pub fn commutator_curvature_identity(x: &AlgebraElement, y: &AlgebraElement) -> Result<(f64, f64)> {
    let xy = killing_inner(x, y);
    if xy.abs() > ORTHOGONALITY_TOL {
        return Err(Error::NotOrthogonal(xy));
    }
    let r = sectional_curvature(x, y)?;
    let c = commutator(x, y);
    Ok((killing_inner(&c, &c), 4.0 * r * x.killing_norm_sqr() * y.killing_norm_sqr()))
}
