//! Curvature tensors of the model spaces.
//!
//! Convention: `R(X,Y)Z` is normalized so that `<R(X,Y)Y, X>` is the
//! sectional curvature of `span(X, Y)` for orthonormal `X, Y`. With this
//! convention the holomorphic sectional curvature of the constant-curvature
//! family equals `c`, and the normal Jacobi operator is `X -> R(X,N)N`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GeometryError, Result};
use crate::linalg::{from_columns, Operator, Vector};
use crate::model_frame::{AmbientKind, AmbientSpec};

/// Tolerance for "unit length" checks on normals.
pub const UNIT_TOL: f64 = 1e-12;
/// Pass threshold for [`CurvatureReport`].
pub const SELFTEST_TOL: f64 = 1e-12;

/// Kähler part with `c = 4`:
/// `<Y,Z>X - <X,Z>Y + <JY,Z>JX - <JX,Z>JY - 2<JX,Y>JZ`.
fn kahler_part(j: &Operator, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let jx = j * x;
    let jy = j * y;
    let jz = j * z;
    x * y.dot(z) - y * x.dot(z) + &jx * jy.dot(z) - &jy * jx.dot(z) - jz * (2.0 * jx.dot(y))
}

/// Real-structure part:
/// `<AY,Z>AX - <AX,Z>AY + <JAY,Z>JAX - <JAX,Z>JAY`.
fn real_structure_part(j: &Operator, a: &Operator, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let ax = a * x;
    let ay = a * y;
    let jax = j * &ax;
    let jay = j * &ay;
    &ax * ay.dot(z) - &ay * ax.dot(z) + &jax * jay.dot(z) - &jay * jax.dot(z)
}

/// Curvature of constant holomorphic sectional curvature `c`.
pub fn csf_curvature(spec: &AmbientSpec, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    match spec.kind() {
        AmbientKind::Csf { c } => Ok(kahler_part(spec.frame().j(), x, y, z) * (c / 4.0)),
        AmbientKind::Quadric { .. } => Err(GeometryError::WrongAmbient(
            "constant holomorphic curvature tensor requested for a quadric".into(),
        )),
    }
}

/// Curvature of `Q^n` (`ε = +1`) or `Q^n*` (`ε = -1`) using the frame's base
/// real structure.
pub fn quadric_curvature(spec: &AmbientSpec, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
    match spec.kind() {
        AmbientKind::Quadric { sign } => {
            let a = spec.frame().a()?;
            Ok(quadric_tensor(sign.epsilon(), spec.frame().j(), a, x, y, z))
        }
        AmbientKind::Csf { .. } => Err(GeometryError::WrongAmbient(
            "quadric tensor requested for a constant holomorphic curvature space".into(),
        )),
    }
}

/// Quadric tensor with an explicit real structure `a`.
pub fn quadric_tensor(
    epsilon: f64,
    j: &Operator,
    a: &Operator,
    x: &Vector,
    y: &Vector,
    z: &Vector,
) -> Vector {
    (kahler_part(j, x, y, z) + real_structure_part(j, a, x, y, z)) * epsilon
}

/// `R(X,Y)Z` for whichever family `spec` describes.
pub fn curvature(spec: &AmbientSpec, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let j = spec.frame().j();
    match spec.kind() {
        AmbientKind::Csf { c } => kahler_part(j, x, y, z) * (c / 4.0),
        AmbientKind::Quadric { sign } => {
            let a = spec
                .frame()
                .a()
                .expect("quadric ambient always carries a real structure");
            quadric_tensor(sign.epsilon(), j, a, x, y, z)
        }
    }
}

fn check_unit(v: &Vector) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(GeometryError::NotUnit { norm });
    }
    Ok(())
}

/// The operator `X -> R(X,N)N`, assembled column by column.
pub fn normal_jacobi_operator(spec: &AmbientSpec, normal: &Vector) -> Result<Operator> {
    check_unit(normal)?;
    let frame = spec.frame();
    let cols: Vec<Vector> = (0..frame.dim())
        .map(|k| curvature(spec, &crate::linalg::unit(frame.dim(), k), normal, normal))
        .collect();
    Ok(from_columns(&cols))
}

/// `Ric(X) = sum_k R(e_k, J e_k) J X` over the standard unitary frame.
pub fn ricci_operator(spec: &AmbientSpec) -> Operator {
    let frame = spec.frame();
    let dim = frame.dim();
    let mut cols = Vec::with_capacity(dim);
    for col in 0..dim {
        let jx = frame.apply_j(&crate::linalg::unit(dim, col));
        let v = (0..frame.n()).fold(Vector::zeros(dim), |acc, k| {
            acc + curvature(spec, &frame.e(k), &frame.je(k), &jx)
        });
        cols.push(v);
    }
    from_columns(&cols)
}

/// Max residuals of the algebraic curvature identities over random samples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurvatureReport {
    pub residual_pair_symmetry: f64,
    pub residual_bianchi: f64,
    pub residual_kahler_invariance: f64,
    pub residual_skew: f64,
    pub trials: usize,
}

impl CurvatureReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_pair_symmetry
            .max(self.residual_bianchi)
            .max(self.residual_kahler_invariance)
            .max(self.residual_skew)
    }

    pub fn pass(&self) -> bool {
        self.max_residual() < SELFTEST_TOL
    }

    fn absorb(&mut self, other: &CurvatureReport) {
        self.residual_pair_symmetry = self.residual_pair_symmetry.max(other.residual_pair_symmetry);
        self.residual_bianchi = self.residual_bianchi.max(other.residual_bianchi);
        self.residual_kahler_invariance = self
            .residual_kahler_invariance
            .max(other.residual_kahler_invariance);
        self.residual_skew = self.residual_skew.max(other.residual_skew);
        self.trials += other.trials;
    }
}

/// Identity residuals for a single quadruple.
pub fn curvature_residuals(
    spec: &AmbientSpec,
    x: &Vector,
    y: &Vector,
    z: &Vector,
    w: &Vector,
) -> CurvatureReport {
    let r = |a: &Vector, b: &Vector, c: &Vector| curvature(spec, a, b, c);
    let j = spec.frame().j();
    let rxyz = r(x, y, z);

    let pair = (rxyz.dot(w) - r(z, w, x).dot(y)).abs();
    let bianchi = (&rxyz + r(y, z, x) + r(z, x, y)).norm();
    let kahler = (r(&(j * x), &(j * y), z) - &rxyz).norm();
    let skew_first = (&rxyz + r(y, x, z)).norm();
    let skew_last = (rxyz.dot(w) + r(x, y, w).dot(z)).abs();

    CurvatureReport {
        residual_pair_symmetry: pair,
        residual_bianchi: bianchi,
        residual_kahler_invariance: kahler,
        residual_skew: skew_first.max(skew_last),
        trials: 1,
    }
}

/// Components uniform in `[-1, 1]`.
pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    Vector::from_iterator(dim, (0..dim).map(|_| rng.random_range(-1.0..=1.0)))
}

pub fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let v = random_vector(rng, dim);
        let norm = v.norm();
        if norm > 1e-3 {
            return v / norm;
        }
    }
}

/// Runs [`curvature_residuals`] over `trials` random quadruples.
pub fn curvature_selftest(spec: &AmbientSpec, trials: usize, seed: u64) -> Result<CurvatureReport> {
    if trials == 0 {
        return Err(GeometryError::Parameter("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = spec.dim();
    let mut report = CurvatureReport::default();
    for _ in 0..trials {
        let x = random_vector(&mut rng, dim);
        let y = random_vector(&mut rng, dim);
        let z = random_vector(&mut rng, dim);
        let w = random_vector(&mut rng, dim);
        report.absorb(&curvature_residuals(spec, &x, &y, &z, &w));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_frame::QuadricSign;

    #[test]
    fn holomorphic_sectional_curvature_is_c() {
        let spec = AmbientSpec::csf(3, 4.0).unwrap();
        let x = Vector::from_vec(vec![0.2, -0.4, 0.1, 0.5, 0.3, -0.6]).normalize();
        let jx = spec.frame().apply_j(&x);
        let v = csf_curvature(&spec, &x, &jx, &jx).unwrap();
        assert!((v - &x * 4.0).norm() < 1e-14);
    }

    #[test]
    fn csf_vanishes_on_repeated_argument_and_in_flat_space() {
        let spec = AmbientSpec::csf(3, -2.5).unwrap();
        let x = Vector::from_vec(vec![0.2, -0.4, 0.1, 0.5, 0.3, -0.6]);
        let z = Vector::from_vec(vec![1.0, 0.0, 0.3, -0.2, 0.1, 0.9]);
        assert!(csf_curvature(&spec, &x, &x, &z).unwrap().norm() < 1e-15);

        let flat = AmbientSpec::csf(3, 0.0).unwrap();
        let y = Vector::from_vec(vec![0.7, 0.1, -0.3, 0.0, 0.5, 0.2]);
        assert_eq!(csf_curvature(&flat, &x, &y, &z).unwrap().norm(), 0.0);
    }

    #[test]
    fn wrong_family_is_rejected() {
        let q = AmbientSpec::quadric(3, QuadricSign::Compact).unwrap();
        let c = AmbientSpec::csf(3, 1.0).unwrap();
        let v = q.frame().e(0);
        assert!(matches!(
            csf_curvature(&q, &v, &v, &v),
            Err(GeometryError::WrongAmbient(_))
        ));
        assert!(matches!(
            quadric_curvature(&c, &v, &v, &v),
            Err(GeometryError::WrongAmbient(_))
        ));
    }

    #[test]
    fn a_principal_normal_in_compact_and_dual_quadric() {
        for (sign, expect) in [(QuadricSign::Compact, 2.0), (QuadricSign::Noncompact, -2.0)] {
            let spec = AmbientSpec::quadric(3, sign).unwrap();
            let n = spec.frame().e(0);
            let jn = spec.frame().apply_j(&n);
            let v = quadric_curvature(&spec, &jn, &n, &n).unwrap();
            assert!((v - &jn * expect).norm() < 1e-14);
        }
    }

    #[test]
    fn generic_normal_jacobi_image() {
        let spec = AmbientSpec::quadric(4, QuadricSign::Compact).unwrap();
        let f = spec.frame();
        let a = f.a().unwrap();
        for &t in &[0.1, 0.3, 0.6, std::f64::consts::FRAC_PI_4] {
            let n = f.e(0) * t.cos() + f.je(1) * t.sin();
            let jn = f.apply_j(&n);
            let v = quadric_curvature(&spec, &jn, &n, &n).unwrap();
            let expected = &jn * 4.0 + (a * &jn) * (2.0 * (2.0 * t).cos());
            assert!((v - expected).norm() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn non_unit_normal_is_rejected() {
        let spec = AmbientSpec::csf(2, 4.0).unwrap();
        let n = spec.frame().e(0) * 1.1;
        assert!(matches!(
            normal_jacobi_operator(&spec, &n),
            Err(GeometryError::NotUnit { .. })
        ));
    }

    #[test]
    fn zero_quadruple_has_zero_residuals() {
        let spec = AmbientSpec::quadric(3, QuadricSign::Compact).unwrap();
        let z = Vector::zeros(6);
        let r = curvature_residuals(&spec, &z, &z, &z, &z);
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn zero_trials_rejected() {
        let spec = AmbientSpec::csf(2, 1.0).unwrap();
        assert!(curvature_selftest(&spec, 0, 0).is_err());
    }
}
