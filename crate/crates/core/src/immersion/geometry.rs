//! Finite-difference extrinsic geometry of a chart at a sample point.

use std::sync::Arc;

use crate::contact::{induce_contact_structure, ContactStructure, ShapeData};
use crate::error::{GeometryError, Result};
use crate::linalg::{asymmetry, complement, from_columns, Operator, Vector};
use crate::model_frame::{make_model_frame, ModelFrame};

use super::charts::Chart;

/// Default differencing step.
pub const DEFAULT_STEP: f64 = 1e-3;
/// Frames worse conditioned than this are rejected.
pub const MAX_FRAME_CONDITION: f64 = 1e8;

/// Tangent frame `∂_i f` by five-point central differences (error `O(h⁴)`).
pub fn tangent_frame(chart: &dyn Chart, u: &Vector, h: f64) -> Result<Operator> {
    let m = chart.param_dim();
    let mut cols = Vec::with_capacity(m);
    for i in 0..m {
        let shifted = |k: f64| {
            let mut v = u.clone();
            v[i] += k * h;
            chart.eval_checked(&v)
        };
        let (p2, p1, m1, m2) = (shifted(2.0)?, shifted(1.0)?, shifted(-1.0)?, shifted(-2.0)?);
        cols.push((-p2 + p1 * 8.0 - m1 * 8.0 + m2) / (12.0 * h));
    }
    Ok(from_columns(&cols))
}

fn condition_number(frame: &Operator) -> f64 {
    let sv = frame.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    max / min
}

/// Unit normal orthogonal to the tangent frame, oriented by the chart's hint.
pub fn unit_normal(chart: &dyn Chart, u: &Vector, frame: &Operator) -> Result<Vector> {
    let cond = condition_number(frame);
    if cond.is_nan() || cond > MAX_FRAME_CONDITION {
        return Err(GeometryError::ChartSingularity { cond });
    }
    let cols: Vec<Vector> = frame.column_iter().map(|c| c.into_owned()).collect();
    let mut normal = complement(chart.ambient_dim(), &cols, 1e-12)?
        .pop()
        .expect("a hypersurface frame leaves exactly one normal direction");
    if normal.dot(&chart.normal_hint(u)) < 0.0 {
        normal = -normal;
    }
    Ok(normal)
}

/// Everything the lab knows about one sample.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub u: Vector,
    pub position: Vector,
    /// `2n x (2n-1)` matrix of partials.
    pub tangent: Operator,
    pub metric: Operator,
    pub normal: Vector,
    /// Max `|<N, ∂_i f>|`.
    pub normal_leak: f64,
    /// Max entry of `S - S^T` before symmetrization.
    pub shape_asymmetry: f64,
    pub contact: ContactStructure,
    /// Symmetrized shape operator with `ρ` from the trace identity.
    pub shape: ShapeData,
}

impl PointGeometry {
    /// Chart coordinates of a tangent vector: `a` with `X = T a`.
    pub fn coordinates_of(&self, x: &Vector) -> Vector {
        let rhs = self.tangent.transpose() * x;
        self.metric
            .clone()
            .cholesky()
            .expect("metric of a regular frame is positive definite")
            .solve(&rhs)
    }
}

/// Tangent frame, normal and shape operator at `u`.
///
/// `S` comes from differencing `N` along each chart direction (second-order
/// central differences) and solving `∂_i N = -S ∂_i f` in the frame.
pub fn extrinsic_geometry(chart: &dyn Chart, u: &Vector, h: f64) -> Result<PointGeometry> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeometryError::Parameter(format!("step must be positive, got {h}")));
    }
    let tangent = tangent_frame(chart, u, h)?;
    let normal = unit_normal(chart, u, &tangent)?;
    let m = chart.param_dim();

    let mut dn = Vec::with_capacity(m);
    for i in 0..m {
        let normal_at = |k: f64| -> Result<Vector> {
            let mut v = u.clone();
            v[i] += k * h;
            let t = tangent_frame(chart, &v, h)?;
            unit_normal(chart, &v, &t)
        };
        dn.push((normal_at(1.0)? - normal_at(-1.0)?) / (2.0 * h));
    }
    let dn = from_columns(&dn);

    let metric = tangent.transpose() * &tangent;
    let metric_inv = metric
        .clone()
        .try_inverse()
        .ok_or(GeometryError::ChartSingularity { cond: f64::INFINITY })?;
    let pinv = &metric_inv * tangent.transpose();
    let raw = -(&tangent * &metric_inv * tangent.transpose() * &dn * &pinv);
    let shape_asymmetry = asymmetry(&raw);
    let s = (&raw + raw.transpose()) * 0.5;

    let normal_leak = (tangent.transpose() * &normal).amax();
    let frame = flat_frame(chart.complex_dim())?;
    let contact = induce_contact_structure(&frame, &normal)?;
    let shape = ShapeData::new(&contact, s)?;
    Ok(PointGeometry {
        u: u.clone(),
        position: chart.eval_checked(u)?,
        tangent,
        metric,
        normal,
        normal_leak,
        shape_asymmetry,
        contact,
        shape,
    })
}

/// Model frame of flat `C^n` (no real structure).
pub fn flat_frame(n: usize) -> Result<ModelFrame> {
    make_model_frame(n, false)
}

/// A sampled hypersurface: chart, sample grid and per-sample geometry.
#[derive(Clone)]
pub struct ImmersedPatch {
    pub chart: Arc<dyn Chart>,
    pub h: f64,
    pub samples: Vec<PointGeometry>,
}

impl std::fmt::Debug for ImmersedPatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ImmersedPatch")
            .field("n", &self.chart.complex_dim())
            .field("h", &self.h)
            .field("samples", &self.samples.len())
            .finish()
    }
}

impl ImmersedPatch {
    pub fn sample(chart: Arc<dyn Chart>, grid: &[Vector], h: f64) -> Result<Self> {
        let samples = grid
            .iter()
            .map(|u| extrinsic_geometry(chart.as_ref(), u, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(ImmersedPatch { chart, h, samples })
    }

    pub fn grid(&self) -> impl Iterator<Item = &Vector> {
        self.samples.iter().map(|s| &s.u)
    }
}

/// Tensor grid `center + spacing * k`, `k ∈ {-(p-1)/2, .., (p-1)/2}` per axis.
pub fn cube_grid(center: &Vector, spacing: f64, points_per_axis: usize) -> Vec<Vector> {
    let dim = center.len();
    let p = points_per_axis.max(1);
    let offset = (p as f64 - 1.0) / 2.0;
    let total = p.pow(dim as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = center.clone();
            for i in 0..dim {
                v[i] += spacing * ((idx % p) as f64 - offset);
                idx /= p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::charts::{CylinderChart, HyperplaneChart, SphereChart};
    use crate::linalg::{op_norm, sorted_symmetric_eigen};

    #[test]
    fn sphere_shape_operator() {
        let chart = SphereChart::new(3, 2.0).unwrap();
        let u = Vector::from_vec(vec![0.1, -0.2, 0.05, 0.15, -0.1]);
        let g = extrinsic_geometry(&chart, &u, 1e-3).unwrap();
        let expected = g.contact.tangent_projector() * -0.5;
        assert!(op_norm(&(g.shape.operator() - expected)) < 1e-5);
        assert!(g.normal_leak < 1e-8);
        assert!(g.shape_asymmetry < 10.0 * 1e-6);
        // outward
        assert!(g.normal.dot(&g.position) > 0.0);
    }

    #[test]
    fn hyperplanes_are_totally_geodesic() {
        let u = Vector::from_vec(vec![0.3, -0.7, 1.2, 0.4, -0.1]);
        let chart = HyperplaneChart::coordinate(3).unwrap();
        let g = extrinsic_geometry(&chart, &u, 1e-3).unwrap();
        assert!(g.shape.operator().amax() < 1e-10);

        let w = Vector::from_vec(vec![0.3, -0.2, 0.5, 0.1, 0.7, -0.4]);
        let tilted = HyperplaneChart::with_normal(3, w).unwrap();
        let g = extrinsic_geometry(&tilted, &u, 1e-3).unwrap();
        assert!(g.shape.operator().amax() < 1e-10, "{}", g.shape.operator().amax());
    }

    #[test]
    fn cylinder_principal_curvatures() {
        let r = 1.5;
        let chart = CylinderChart::new(3, r).unwrap();
        let u = Vector::from_vec(vec![0.4, 0.2, -0.3, 0.1, 0.0]);
        let g = extrinsic_geometry(&chart, &u, 1e-3).unwrap();
        let basis = from_columns(&g.contact.tangent_basis());
        let restricted = basis.transpose() * g.shape.operator() * &basis;
        let (values, _) = sorted_symmetric_eigen(&restricted);
        assert!((values[0] + 1.0 / r).abs() < 1e-5);
        for v in &values[1..] {
            assert!(v.abs() < 1e-5);
        }
    }

    #[test]
    fn out_of_domain_stencil() {
        let chart = SphereChart::new(2, 1.0).unwrap();
        let u = Vector::from_vec(vec![0.9995, 0.0, 0.0]);
        assert!(matches!(
            extrinsic_geometry(&chart, &u, 1e-3),
            Err(GeometryError::Boundary { axis: 0 })
        ));
    }

    #[test]
    fn grid_has_expected_size_and_center() {
        let c = Vector::from_vec(vec![1.0, 2.0]);
        let g = cube_grid(&c, 0.5, 3);
        assert_eq!(g.len(), 9);
        assert!(g.iter().any(|v| (v - &c).norm() == 0.0));
    }
}
