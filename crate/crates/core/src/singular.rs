//! Decomposition of unit tangent vectors of the quadric against the circle
//! of real structures, and their singular-type classification.
//!
//! Every unit `N` can be written `N = cos(t) Z1 + sin(t) J Z2` with
//! orthonormal `Z1, Z2 ∈ V(A')` for some `A'` on the circle through `A` and
//! `t ∈ [0, π/4]`. `t = 0` is A-principal, `t = π/4` is A-isotropic.

use std::f64::consts::FRAC_PI_4;

use crate::curvature::{curvature, UNIT_TOL};
use crate::error::{GeometryError, Result};
use crate::linalg::{reorthogonalize, unit, Operator, Vector};
use crate::model_frame::{rotate_real_structure, AmbientKind, AmbientSpec, ModelFrame};

pub const DEFAULT_TOL_T: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct NormalDecomposition {
    /// The real structure on the circle maximizing `<A_s N, N>`.
    pub a_adapted: Operator,
    /// Circle parameter of `a_adapted`.
    pub s: f64,
    pub t: f64,
    pub z1: Vector,
    pub z2: Vector,
    /// `z2` is an arbitrary completion because `t` is (numerically) zero.
    pub z2_completed: bool,
}

impl NormalDecomposition {
    /// `cos(t) Z1 + sin(t) J Z2`.
    pub fn reconstruct(&self, frame: &ModelFrame) -> Vector {
        &self.z1 * self.t.cos() + frame.apply_j(&self.z2) * self.t.sin()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularType {
    APrincipal,
    AIsotropic,
    Generic(f64),
}

impl SingularType {
    pub fn is_singular(&self) -> bool {
        !matches!(self, SingularType::Generic(_))
    }
}

fn check_unit(n: &Vector) -> Result<()> {
    let norm = n.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(GeometryError::NotUnit { norm });
    }
    Ok(())
}

/// Closed-form maximizer of `s -> <A_s N, N>` and the induced splitting.
pub fn adapted_decomposition(frame: &ModelFrame, normal: &Vector) -> Result<NormalDecomposition> {
    let a = frame.a()?;
    check_unit(normal)?;
    let an = a * normal;
    let cos_part = an.dot(normal);
    let sin_part = frame.apply_j(&an).dot(normal);
    let s = sin_part.atan2(cos_part);
    let a_adapted = rotate_real_structure(frame, s)?;
    let an = &a_adapted * normal;

    // |N + A'N| = 2cos(t), |N - A'N| = 2sin(t); atan2 keeps t accurate near 0.
    let plus = normal + &an;
    let minus = normal - &an;
    let t = minus.norm().atan2(plus.norm()).clamp(0.0, FRAC_PI_4);

    let z1 = &plus / plus.norm();
    let (z2, z2_completed) = if t > DEFAULT_TOL_T {
        let v = -frame.apply_j(&minus);
        let norm = v.norm();
        (v / norm, false)
    } else {
        (complete_in_v(frame.dim(), &a_adapted, &z1), true)
    };

    Ok(NormalDecomposition {
        a_adapted,
        s,
        t,
        z1,
        z2,
        z2_completed,
    })
}

/// A unit vector of `V(a)` orthogonal to `z1`, chosen from the coordinate
/// basis with the largest surviving component.
fn complete_in_v(dim: usize, a: &Operator, z1: &Vector) -> Vector {
    let to_v = (a + Operator::identity(dim, dim)) * 0.5;
    let best = (0..dim)
        .map(|k| reorthogonalize(&(&to_v * unit(dim, k)), std::slice::from_ref(z1)))
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .expect("dimension is at least 4");
    let norm = best.norm();
    best / norm
}

pub fn classify_normal(frame: &ModelFrame, normal: &Vector, tol_t: f64) -> Result<SingularType> {
    let d = adapted_decomposition(frame, normal)?;
    Ok(if d.t < tol_t {
        SingularType::APrincipal
    } else if (d.t - FRAC_PI_4).abs() < tol_t {
        SingularType::AIsotropic
    } else {
        SingularType::Generic(d.t)
    })
}

/// Norm of the component of `R̄_N(JN)` orthogonal to `JN`; zero iff `JN` is
/// an eigenvector of the normal Jacobi operator.
pub fn jn_eigen_defect(spec: &AmbientSpec, normal: &Vector) -> Result<f64> {
    if !matches!(spec.kind(), AmbientKind::Quadric { .. }) {
        return Err(GeometryError::WrongAmbient(
            "singular normals are defined for the quadric pair".into(),
        ));
    }
    check_unit(normal)?;
    let jn = spec.frame().apply_j(normal);
    let v = curvature(spec, &jn, normal, normal);
    let along = v.dot(&jn);
    Ok((v - &jn * along).norm())
}
