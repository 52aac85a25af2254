//! Built-in hypersurface charts `R^{2n-1} ⊃ box -> C^n = R^{2n}`.
//!
//! Ambient coordinates follow the model-frame ordering
//! `(Re z_1, .., Re z_n, Im z_1, .., Im z_n)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{GeometryError, Result};
use crate::linalg::Vector;

/// Axis-aligned parameter box.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ParamBox {
    pub fn cube(dim: usize, half_width: f64) -> Self {
        ParamBox {
            lower: vec![-half_width; dim],
            upper: vec![half_width; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// First axis along which `u` leaves the box.
    pub fn violation(&self, u: &Vector) -> Option<usize> {
        (0..self.dim()).find(|&i| !(u[i] >= self.lower[i] && u[i] <= self.upper[i]))
    }
}

/// A parametrized real hypersurface of `C^n`.
pub trait Chart: Send + Sync {
    /// Complex dimension `n` of the ambient space.
    fn complex_dim(&self) -> usize;

    fn domain(&self) -> &ParamBox;

    /// The immersion itself; `u` has length `2n - 1`.
    fn eval(&self, u: &Vector) -> Vector;

    /// A vector with positive inner product against the chosen unit normal.
    fn normal_hint(&self, u: &Vector) -> Vector;

    fn param_dim(&self) -> usize {
        2 * self.complex_dim() - 1
    }

    fn ambient_dim(&self) -> usize {
        2 * self.complex_dim()
    }

    /// Evaluates after checking `u` lies in the domain.
    fn eval_checked(&self, u: &Vector) -> Result<Vector> {
        match self.domain().violation(u) {
            Some(axis) => Err(GeometryError::Boundary { axis }),
            None => Ok(self.eval(u)),
        }
    }
}

/// Orientation of the chosen normal relative to a chart's hint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Outward,
    Inward,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Outward => 1.0,
            Orientation::Inward => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Outward => Orientation::Inward,
            Orientation::Inward => Orientation::Outward,
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(GeometryError::InvalidDimension { n, min: 2 });
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(GeometryError::Parameter(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

/// `S^{2n-1}(r)` by stereographic projection from the point `-r e_{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereChart {
    n: usize,
    r: f64,
    orientation: Orientation,
    domain: ParamBox,
}

impl SphereChart {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        check_n(n)?;
        check_radius(r)?;
        Ok(SphereChart {
            n,
            r,
            orientation: Orientation::Outward,
            domain: ParamBox::cube(2 * n - 1, 1.0),
        })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }
}

impl Chart for SphereChart {
    fn complex_dim(&self) -> usize {
        self.n
    }

    fn domain(&self) -> &ParamBox {
        &self.domain
    }

    fn eval(&self, u: &Vector) -> Vector {
        let sq = u.norm_squared();
        let scale = self.r / (1.0 + sq);
        let mut p = Vector::zeros(2 * self.n);
        for i in 0..u.len() {
            p[i] = 2.0 * u[i] * scale;
        }
        p[2 * self.n - 1] = (1.0 - sq) * scale;
        p
    }

    fn normal_hint(&self, u: &Vector) -> Vector {
        self.eval(u) * self.orientation.sign()
    }
}

/// An affine hyperplane through the origin with unit normal `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneChart {
    n: usize,
    normal: Vector,
    basis: Vec<Vector>,
    domain: ParamBox,
}

impl HyperplaneChart {
    /// The coordinate hyperplane `Im z_n = 0`.
    pub fn coordinate(n: usize) -> Result<Self> {
        check_n(n)?;
        let dim = 2 * n;
        Self::with_normal(n, crate::linalg::unit(dim, dim - 1))
    }

    pub fn with_normal(n: usize, normal: Vector) -> Result<Self> {
        check_n(n)?;
        let normal = normal.normalize();
        let basis = crate::linalg::complement(2 * n, std::slice::from_ref(&normal), 1e-10)?;
        Ok(HyperplaneChart {
            n,
            normal,
            basis,
            domain: ParamBox::cube(2 * n - 1, 10.0),
        })
    }
}

impl Chart for HyperplaneChart {
    fn complex_dim(&self) -> usize {
        self.n
    }

    fn domain(&self) -> &ParamBox {
        &self.domain
    }

    fn eval(&self, u: &Vector) -> Vector {
        self.basis
            .iter()
            .zip(u.iter())
            .fold(Vector::zeros(2 * self.n), |acc, (b, &c)| acc + b * c)
    }

    fn normal_hint(&self, _u: &Vector) -> Vector {
        self.normal.clone()
    }
}

/// `S^1(r) x R^{2n-2}`: `z_1 = r e^{iθ}`, the remaining coordinates free.
/// Parameters are `(θ, Re z_2, .., Re z_n, Im z_2, .., Im z_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderChart {
    n: usize,
    r: f64,
    domain: ParamBox,
}

impl CylinderChart {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        check_n(n)?;
        check_radius(r)?;
        let mut domain = ParamBox::cube(2 * n - 1, 10.0);
        domain.lower[0] = -PI;
        domain.upper[0] = PI;
        Ok(CylinderChart { n, r, domain })
    }
}

impl Chart for CylinderChart {
    fn complex_dim(&self) -> usize {
        self.n
    }

    fn domain(&self) -> &ParamBox {
        &self.domain
    }

    fn eval(&self, u: &Vector) -> Vector {
        let n = self.n;
        let mut p = Vector::zeros(2 * n);
        p[0] = self.r * u[0].cos();
        p[n] = self.r * u[0].sin();
        for k in 1..n {
            p[k] = u[k];
            p[n + k] = u[n - 1 + k];
        }
        p
    }

    fn normal_hint(&self, u: &Vector) -> Vector {
        let mut v = Vector::zeros(2 * self.n);
        v[0] = u[0].cos();
        v[self.n] = u[0].sin();
        v
    }
}

/// The graph `w = F(z)` of a polynomial `F`, a complex curve in `C^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphicGraph {
    coefficients: Vec<Complex64>,
}

impl HolomorphicGraph {
    /// `F(z) = Σ c_k z^k`.
    pub fn polynomial(coefficients: Vec<Complex64>) -> Self {
        HolomorphicGraph { coefficients }
    }

    /// `F(z) = z² / 2`.
    pub fn half_square() -> Self {
        Self::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)])
    }

    fn derivative_coefficients(c: &[Complex64]) -> Vec<Complex64> {
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &a)| a * k as f64)
            .collect()
    }

    fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
        c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        Self::horner(&self.coefficients, z)
    }

    pub fn first(&self, z: Complex64) -> Complex64 {
        Self::horner(&Self::derivative_coefficients(&self.coefficients), z)
    }

    pub fn second(&self, z: Complex64) -> Complex64 {
        let d1 = Self::derivative_coefficients(&self.coefficients);
        Self::horner(&Self::derivative_coefficients(&d1), z)
    }

    /// Radius of curvature `θ` with `1/θ = |F''| / (1 + |F'|²)^{3/2}`;
    /// infinite where `F'' = 0`.
    pub fn theta(&self, z: Complex64) -> f64 {
        let d1 = self.first(z).norm_sqr();
        let d2 = self.second(z).norm();
        (1.0 + d1).powf(1.5) / d2
    }

    /// Unit normal `ν = (-conj F', 1) / sqrt(1 + |F'|²)` of the curve.
    pub fn unit_normal(&self, z: Complex64) -> (Complex64, Complex64) {
        let d1 = self.first(z);
        let s = (1.0 + d1.norm_sqr()).sqrt();
        (-d1.conj() / s, Complex64::new(1.0 / s, 0.0))
    }
}

fn to_real(z: Complex64, w: Complex64) -> Vector {
    Vector::from_vec(vec![z.re, w.re, z.im, w.im])
}

/// Tube of radius `r` around the graph of `F` in `C^2`.
/// Parameters are `(Re z, Im z, s)` with the point
/// `(z, F(z)) + r e^{is} ν(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphTubeChart {
    curve: HolomorphicGraph,
    r: f64,
    orientation: Orientation,
    domain: ParamBox,
}

impl GraphTubeChart {
    pub fn new(curve: HolomorphicGraph, r: f64) -> Result<Self> {
        check_radius(r)?;
        let domain = ParamBox {
            lower: vec![-10.0, -10.0, -4.0 * PI],
            upper: vec![10.0, 10.0, 4.0 * PI],
        };
        Ok(GraphTubeChart {
            curve,
            r,
            orientation: Orientation::Outward,
            domain,
        })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn curve(&self) -> &HolomorphicGraph {
        &self.curve
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    fn normal_direction(&self, u: &Vector) -> Vector {
        let z = Complex64::new(u[0], u[1]);
        let (a, b) = self.curve.unit_normal(z);
        let rot = Complex64::from_polar(1.0, u[2]);
        to_real(rot * a, rot * b)
    }
}

impl Chart for GraphTubeChart {
    fn complex_dim(&self) -> usize {
        2
    }

    fn domain(&self) -> &ParamBox {
        &self.domain
    }

    fn eval(&self, u: &Vector) -> Vector {
        let z = Complex64::new(u[0], u[1]);
        to_real(z, self.curve.value(z)) + self.normal_direction(u) * self.r
    }

    fn normal_hint(&self, u: &Vector) -> Vector {
        self.normal_direction(u) * self.orientation.sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_chart_lies_on_sphere() {
        let c = SphereChart::new(3, 2.0).unwrap();
        let u = Vector::from_vec(vec![0.3, -0.2, 0.1, 0.4, -0.5]);
        assert!((c.eval(&u).norm() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn graph_normal_is_hermitian_orthogonal() {
        let g = HolomorphicGraph::half_square();
        let z = Complex64::new(0.2, -0.1);
        let (a, b) = g.unit_normal(z);
        let t = (Complex64::new(1.0, 0.0), g.first(z));
        let herm = t.0 * a.conj() + t.1 * b.conj();
        assert!(herm.norm() < 1e-15);
        assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-15);
        assert!((g.theta(Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn domain_violation_is_reported() {
        let c = SphereChart::new(2, 1.0).unwrap();
        let u = Vector::from_vec(vec![0.0, 1.5, 0.0]);
        assert_eq!(c.eval_checked(&u).unwrap_err(), GeometryError::Boundary { axis: 1 });
    }
}
