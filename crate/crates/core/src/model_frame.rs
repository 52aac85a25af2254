//! Point models of the ambient tangent space.
//!
//! The real model space is R^{2n} with coordinates ordered as
//! `(x_1, .., x_n, y_1, .., y_n)`, i.e. `e_1, .., e_n` followed by
//! `Je_1, .., Je_n`. The complex structure is multiplication by `i`, and the
//! base real structure `A` fixes `e_k` and negates `Je_k`, so that
//! `V(A) = span(e_k)` and `JV(A) = span(Je_k)`.

use crate::error::{GeometryError, Result};
use crate::linalg::{complement, unit, Operator, Vector};

/// Linear dependence threshold for vector families.
pub const DEPENDENCE_TOL: f64 = 1e-10;

/// Tangent-space model with complex structure `J` and optional real structure `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFrame {
    n: usize,
    j: Operator,
    a: Option<Operator>,
}

/// Which ambient family a frame models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmbientKind {
    /// Constant holomorphic sectional curvature `c` (CP^n, C^n, CH^n).
    Csf { c: f64 },
    /// The complex quadric (`Compact`) or its noncompact dual.
    Quadric { sign: QuadricSign },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadricSign {
    Compact,
    Noncompact,
}

impl QuadricSign {
    pub fn epsilon(self) -> f64 {
        match self {
            QuadricSign::Compact => 1.0,
            QuadricSign::Noncompact => -1.0,
        }
    }
}

impl TryFrom<i32> for QuadricSign {
    type Error = GeometryError;

    fn try_from(eps: i32) -> Result<Self> {
        match eps {
            1 => Ok(QuadricSign::Compact),
            -1 => Ok(QuadricSign::Noncompact),
            other => Err(GeometryError::Parameter(format!(
                "quadric sign must be +1 or -1, got {other}"
            ))),
        }
    }
}

/// An ambient space at a point: curvature family plus tangent frame.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientSpec {
    kind: AmbientKind,
    frame: ModelFrame,
}

/// Residuals of the structural identities of a frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameResiduals {
    pub j_squared: f64,
    pub j_isometry: f64,
    pub a_squared: f64,
    pub a_symmetric: f64,
    pub a_isometry: f64,
    pub a_anticommutes: f64,
    pub totally_real: f64,
}

impl FrameResiduals {
    pub fn max(&self) -> f64 {
        [
            self.j_squared,
            self.j_isometry,
            self.a_squared,
            self.a_symmetric,
            self.a_isometry,
            self.a_anticommutes,
            self.totally_real,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Builds the standard frame of complex dimension `n`.
pub fn make_model_frame(n: usize, with_real_structure: bool) -> Result<ModelFrame> {
    if n < 2 {
        return Err(GeometryError::InvalidDimension { n, min: 2 });
    }
    let dim = 2 * n;
    let mut j = Operator::zeros(dim, dim);
    for k in 0..n {
        j[(n + k, k)] = 1.0;
        j[(k, n + k)] = -1.0;
    }
    let a = with_real_structure.then(|| {
        let mut a = Operator::identity(dim, dim);
        for k in n..dim {
            a[(k, k)] = -1.0;
        }
        a
    });
    Ok(ModelFrame { n, j, a })
}

impl ModelFrame {
    /// Complex dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Real dimension `2n`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn j(&self) -> &Operator {
        &self.j
    }

    pub fn a(&self) -> Result<&Operator> {
        self.a.as_ref().ok_or(GeometryError::NoRealStructure)
    }

    pub fn has_real_structure(&self) -> bool {
        self.a.is_some()
    }

    pub fn apply_j(&self, v: &Vector) -> Vector {
        &self.j * v
    }

    /// `e_k` for `k` in `0..n`.
    pub fn e(&self, k: usize) -> Vector {
        unit(self.dim(), k)
    }

    /// `Je_k` for `k` in `0..n`.
    pub fn je(&self, k: usize) -> Vector {
        unit(self.dim(), self.n + k)
    }

    /// Basis `e_1..e_n` of `V(A)`.
    pub fn v_basis(&self) -> Vec<Vector> {
        (0..self.n).map(|k| self.e(k)).collect()
    }

    /// Basis `Je_1..Je_n` of `JV(A)`.
    pub fn jv_basis(&self) -> Vec<Vector> {
        (0..self.n).map(|k| self.je(k)).collect()
    }

    /// Returns a copy of this frame whose base real structure is `a`.
    ///
    /// `a` must itself be a real structure compatible with `J`.
    pub fn with_real_structure(&self, a: Operator) -> Result<ModelFrame> {
        let frame = ModelFrame {
            n: self.n,
            j: self.j.clone(),
            a: Some(a),
        };
        let res = frame.residuals();
        if res.max() > 1e-10 {
            return Err(GeometryError::Parameter(format!(
                "operator is not a real structure (residual {:e})",
                res.max()
            )));
        }
        Ok(frame)
    }

    /// Evaluates every structural identity over the coordinate basis.
    pub fn residuals(&self) -> FrameResiduals {
        let dim = self.dim();
        let id = Operator::identity(dim, dim);
        let j = &self.j;
        let mut res = FrameResiduals {
            j_squared: (j * j + &id).amax(),
            j_isometry: (j.transpose() * j - &id).amax(),
            a_squared: 0.0,
            a_symmetric: 0.0,
            a_isometry: 0.0,
            a_anticommutes: 0.0,
            totally_real: 0.0,
        };
        if let Some(a) = &self.a {
            res.a_squared = (a * a - &id).amax();
            res.a_symmetric = (a - a.transpose()).amax();
            res.a_isometry = (a.transpose() * a - &id).amax();
            res.a_anticommutes = (a * j + j * a).amax();
            // V(A) is the +1 eigenspace of A; project onto it and test <JX, Y>.
            let p = (a + &id) * 0.5;
            res.totally_real = (p.transpose() * j * &p).amax();
        }
        res
    }
}

/// Point on the circle of real structures through `A`:
/// `A_s = cos(s) A + sin(s) JA`.
pub fn rotate_real_structure(frame: &ModelFrame, s: f64) -> Result<Operator> {
    let a = frame.a()?;
    let ja = frame.j() * a;
    Ok(a * s.cos() + ja * s.sin())
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)`.
///
/// Inputs must be linearly independent (smallest singular value at least
/// [`DEPENDENCE_TOL`]). The complement is completed greedily from the
/// coordinate basis, always taking the candidate with the largest residual.
pub fn orthonormal_complement(frame: &ModelFrame, vectors: &[Vector]) -> Result<Vec<Vector>> {
    let dim = frame.dim();
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(GeometryError::Parameter(format!(
            "vector of length {} in a frame of real dimension {dim}",
            bad.len()
        )));
    }
    complement(dim, vectors, DEPENDENCE_TOL)
}

impl AmbientSpec {
    pub fn new(kind: AmbientKind, frame: ModelFrame) -> Result<Self> {
        match kind {
            AmbientKind::Quadric { .. } if !frame.has_real_structure() => {
                Err(GeometryError::NoRealStructure)
            }
            AmbientKind::Csf { .. } if frame.has_real_structure() => Err(
                GeometryError::WrongAmbient("constant holomorphic curvature frame carries a real structure".into()),
            ),
            AmbientKind::Csf { c } if !c.is_finite() => Err(GeometryError::Parameter(format!(
                "holomorphic sectional curvature must be finite, got {c}"
            ))),
            _ => Ok(AmbientSpec { kind, frame }),
        }
    }

    /// Constant holomorphic sectional curvature `c` in complex dimension `n`.
    pub fn csf(n: usize, c: f64) -> Result<Self> {
        Self::new(AmbientKind::Csf { c }, make_model_frame(n, false)?)
    }

    /// `Q^n` (compact) or `Q^n*` (noncompact).
    pub fn quadric(n: usize, sign: QuadricSign) -> Result<Self> {
        Self::new(AmbientKind::Quadric { sign }, make_model_frame(n, true)?)
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    pub fn frame(&self) -> &ModelFrame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Same ambient, with the base real structure replaced by `a`.
    pub fn with_real_structure(&self, a: Operator) -> Result<Self> {
        Self::new(self.kind, self.frame.with_real_structure(a)?)
    }
}
