//! Oracle checks on sampled spheres and C² tubes.

use std::sync::Arc;

use num_complex::Complex64;

use crate::contact::{
    contact_defect, contact_eigenvalues, dim2_contact_check_with_tol, hopf_data, pairing_residual,
    ShapeData,
};
use crate::error::{GeometryError, Result};
use crate::linalg::{op_norm, Vector};

use super::charts::{Chart, GraphTubeChart, HolomorphicGraph, Orientation, SphereChart};
use super::forms::{exterior_derivative_oneform, exterior_derivative_twoform, fundamental_form, reeb_form};
use super::geometry::{cube_grid, extrinsic_geometry, ImmersedPatch, PointGeometry};

/// Hopf tolerance used by the pointwise dimension-two test on sampled data.
pub const FD_HOPF_TOL: f64 = 1e-4;
/// Tubes closer than this fraction of the focal radius are rejected.
pub const FOCAL_SAFETY: f64 = 0.9;

/// Sample grid of a patch check.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchGrid {
    pub center: Vector,
    pub spacing: f64,
    pub points_per_axis: usize,
}

impl PatchGrid {
    pub fn points(&self) -> Vec<Vector> {
        cube_grid(&self.center, self.spacing, self.points_per_axis)
    }
}

/// Default sphere patch: a small cube around a generic chart point.
pub fn default_sphere_grid(n: usize) -> PatchGrid {
    let center = Vector::from_fn(2 * n - 1, |i, _| 0.1 * ((i % 3) as f64 - 1.0) + 0.05);
    PatchGrid {
        center,
        spacing: 0.05,
        points_per_axis: 3,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphereCheck {
    pub n: usize,
    pub r: f64,
    pub h: f64,
    pub samples: usize,
    /// `max |ξ + iz/r|`.
    pub xi_residual: f64,
    /// Contact defect with `ρ = -1/r`.
    pub contact_defect: f64,
    /// `max ‖S + (1/r) P‖`.
    pub shape_residual: f64,
    pub rho_mean: f64,
    pub rho_variation: f64,
    /// `max |d(tr S)(X)|` over unit `X ∈ C`.
    pub dtrace_contact: f64,
    /// Relative `‖dη + (2/r)ω‖`.
    pub deta_relative: f64,
    /// `max |dω|` over index triples.
    pub domega: f64,
    /// `max |dω| / max |ω|`, independent of the radius.
    pub domega_relative: f64,
    pub pairing: f64,
    pub normal_leak: f64,
    pub shape_asymmetry: f64,
    /// Pointwise dimension-two contact test, `n = 2` only.
    pub dim2_contact: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct C2TubeCheck {
    pub r: f64,
    pub h: f64,
    pub samples: usize,
    pub theta_min: f64,
    /// `max |λ_FD - λ_exact|` over the `C`-curvature pair.
    pub curvature_residual: f64,
    /// The `C`-curvatures at the sample closest to the patch center, descending.
    pub center_curvatures: (f64, f64),
    /// Contact defect with `ρ = r/(θ²-r²)`.
    pub contact_defect: f64,
    /// `max |α + 1/r|`.
    pub alpha_residual: f64,
    pub rho_min: f64,
    pub rho_max: f64,
    pub pairing: f64,
    pub hopf_defect: f64,
    pub dim2_contact: bool,
    pub normal_leak: f64,
    pub shape_asymmetry: f64,
}

impl C2TubeCheck {
    pub fn rho_variation(&self) -> f64 {
        self.rho_max - self.rho_min
    }
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(GeometryError::Parameter(format!("step must be positive, got {h}")));
    }
    Ok(())
}

/// Gradient of `tr S` in chart coordinates.
///
/// `tr S` already carries rounding of order `eps/h²`, so it is differenced
/// at the coarser `field_step` rather than at `h`.
fn trace_gradient(chart: &dyn Chart, u: &Vector, h: f64, field_step: f64) -> Result<Vector> {
    let mut grad = Vector::zeros(u.len());
    for i in 0..u.len() {
        let mut plus = u.clone();
        plus[i] += field_step;
        let mut minus = u.clone();
        minus[i] -= field_step;
        let tp = extrinsic_geometry(chart, &plus, h)?.shape.operator().trace();
        let tm = extrinsic_geometry(chart, &minus, h)?.shape.operator().trace();
        grad[i] = (tp - tm) / (2.0 * field_step);
    }
    Ok(grad)
}

fn dtrace_along_contact(chart: &dyn Chart, g: &PointGeometry, h: f64, field_step: f64) -> Result<f64> {
    let grad = trace_gradient(chart, &g.u, h, field_step)?;
    Ok(g.contact
        .contact_basis()
        .iter()
        .map(|x| g.coordinates_of(x).dot(&grad).abs())
        .fold(0.0, f64::max))
}

fn spread(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

pub fn sphere_check(n: usize, r: f64, h: f64) -> Result<SphereCheck> {
    sphere_check_on(n, r, h, &default_sphere_grid(n))
}

pub fn sphere_check_on(n: usize, r: f64, h: f64, grid: &PatchGrid) -> Result<SphereCheck> {
    check_step(h)?;
    if !(grid.spacing > 0.0 && grid.spacing.is_finite()) {
        return Err(GeometryError::Parameter(format!(
            "grid spacing must be positive, got {}",
            grid.spacing
        )));
    }
    let chart: Arc<dyn Chart> = Arc::new(SphereChart::new(n, r)?);
    if grid.center.len() != chart.param_dim() {
        return Err(GeometryError::WrongDimension {
            expected: chart.param_dim(),
            got: grid.center.len(),
        });
    }
    let patch = ImmersedPatch::sample(chart.clone(), &grid.points(), h)?;
    let deta = exterior_derivative_oneform(&reeb_form(chart.clone(), h), h)?;
    let omega = fundamental_form(chart.clone(), h);
    let domega = exterior_derivative_twoform(&omega, h)?;

    let mut out = SphereCheck {
        n,
        r,
        h,
        samples: patch.samples.len(),
        xi_residual: 0.0,
        contact_defect: 0.0,
        shape_residual: 0.0,
        rho_mean: 0.0,
        rho_variation: 0.0,
        dtrace_contact: 0.0,
        deta_relative: 0.0,
        domega: 0.0,
        domega_relative: 0.0,
        pairing: 0.0,
        normal_leak: 0.0,
        shape_asymmetry: 0.0,
        dim2_contact: (n == 2).then_some(true),
    };
    for g in &patch.samples {
        let cs = &g.contact;
        let jz = cs.j() * &g.position;
        out.xi_residual = out.xi_residual.max((cs.xi() + jz / r).amax());
        let fixed = ShapeData::with_rho(cs, g.shape.operator().clone(), -1.0 / r)?;
        out.contact_defect = out.contact_defect.max(contact_defect(cs, &fixed));
        let exact = cs.tangent_projector() * (-1.0 / r);
        out.shape_residual = out.shape_residual.max(op_norm(&(g.shape.operator() - exact)));
        out.dtrace_contact = out.dtrace_contact.max(dtrace_along_contact(chart.as_ref(), g, h, grid.spacing)?);

        let om = omega.two(&g.u)?;
        let w = &om * (2.0 / r);
        let rel = (deta.two(&g.u)? + &w).amax() / w.amax();
        out.deta_relative = out.deta_relative.max(rel);
        let dw = domega.three(&g.u)?.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        out.domega = out.domega.max(dw);
        out.domega_relative = out.domega_relative.max(dw / om.amax());

        out.pairing = out.pairing.max(pairing_residual(cs, &g.shape));
        out.normal_leak = out.normal_leak.max(g.normal_leak);
        out.shape_asymmetry = out.shape_asymmetry.max(g.shape_asymmetry);
        if n == 2 {
            let ok = dim2_contact_check_with_tol(cs, &g.shape, FD_HOPF_TOL).unwrap_or(false);
            out.dim2_contact = out.dim2_contact.map(|all| all && ok);
        }
    }
    let (lo, hi) = spread(patch.samples.iter().map(|g| g.shape.rho()));
    out.rho_variation = hi - lo;
    out.rho_mean = patch.samples.iter().map(|g| g.shape.rho()).sum::<f64>() / out.samples as f64;
    Ok(out)
}

/// Sample points `(Re z, Im z, s)` with `|z| <= radius`.
pub fn disk_grid(radius: f64, points_per_axis: usize, angles: usize) -> Vec<Vector> {
    let p = points_per_axis.max(1);
    let step = if p > 1 { 2.0 * radius / (p - 1) as f64 } else { 0.0 };
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            let (x, y) = if p > 1 {
                (-radius + a as f64 * step, -radius + b as f64 * step)
            } else {
                (0.0, 0.0)
            };
            if x.hypot(y) > radius * (1.0 + 1e-12) {
                continue;
            }
            for k in 0..angles.max(1) {
                let s = 0.3 + 2.0 * std::f64::consts::PI * k as f64 / angles.max(1) as f64;
                out.push(Vector::from_vec(vec![x, y, s]));
            }
        }
    }
    out
}

/// Default C² tube patch: `|z| <= 0.3`, five points per axis, three circle angles.
pub fn default_tube_grid() -> Vec<Vector> {
    disk_grid(0.3, 5, 3)
}

pub fn c2_tube_check(curve: HolomorphicGraph, r: f64, h: f64) -> Result<C2TubeCheck> {
    c2_tube_check_on(curve, r, h, &default_tube_grid())
}

pub fn c2_tube_check_on(curve: HolomorphicGraph, r: f64, h: f64, grid: &[Vector]) -> Result<C2TubeCheck> {
    check_step(h)?;
    if grid.is_empty() {
        return Err(GeometryError::Parameter("empty sample grid".into()));
    }
    let mut theta_min = f64::INFINITY;
    for u in grid {
        let z = Complex64::new(u[0], u[1]);
        if curve.second(z).norm() < 1e-12 {
            return Err(GeometryError::Precondition(format!(
                "curve is flat (F'' = 0) at z = {z}"
            )));
        }
        theta_min = theta_min.min(curve.theta(z));
    }
    if r >= FOCAL_SAFETY * theta_min {
        return Err(GeometryError::FocalRange {
            r,
            range: format!("(0, {:.6})", FOCAL_SAFETY * theta_min),
        });
    }
    // outward normal: C-curvatures 1/(θ-r) > 0 > -1/(θ+r), α = -1/r
    let chart = GraphTubeChart::new(curve.clone(), r)?.with_orientation(Orientation::Outward);
    let chart: Arc<dyn Chart> = Arc::new(chart);
    let patch = ImmersedPatch::sample(chart, grid, h)?;

    let center = grid
        .iter()
        .enumerate()
        .min_by(|a, b| a.1[0].hypot(a.1[1]).total_cmp(&b.1[0].hypot(b.1[1])))
        .map(|(i, _)| i)
        .expect("grid is non-empty");

    let mut out = C2TubeCheck {
        r,
        h,
        samples: patch.samples.len(),
        theta_min,
        curvature_residual: 0.0,
        center_curvatures: (0.0, 0.0),
        contact_defect: 0.0,
        alpha_residual: 0.0,
        rho_min: f64::INFINITY,
        rho_max: f64::NEG_INFINITY,
        pairing: 0.0,
        hopf_defect: 0.0,
        dim2_contact: true,
        normal_leak: 0.0,
        shape_asymmetry: 0.0,
    };
    for (idx, g) in patch.samples.iter().enumerate() {
        let cs = &g.contact;
        let theta = curve.theta(Complex64::new(g.u[0], g.u[1]));
        let rho = r / (theta * theta - r * r);
        let values = contact_eigenvalues(cs, &g.shape);
        let (lo, hi) = (values[0], values[1]);
        let residual = (hi - 1.0 / (theta - r)).abs().max((lo + 1.0 / (theta + r)).abs());
        out.curvature_residual = out.curvature_residual.max(residual);
        if idx == center {
            out.center_curvatures = (hi, lo);
        }
        let fixed = ShapeData::with_rho(cs, g.shape.operator().clone(), rho)?;
        out.contact_defect = out.contact_defect.max(contact_defect(cs, &fixed));
        out.alpha_residual = out.alpha_residual.max((g.shape.alpha() + 1.0 / r).abs());
        out.rho_min = out.rho_min.min(g.shape.rho());
        out.rho_max = out.rho_max.max(g.shape.rho());
        out.pairing = out.pairing.max(pairing_residual(cs, &g.shape));
        out.hopf_defect = out.hopf_defect.max(hopf_data(cs, &g.shape).defect);
        let ok = dim2_contact_check_with_tol(cs, &g.shape, FD_HOPF_TOL).unwrap_or(false);
        out.dim2_contact &= ok;
        out.normal_leak = out.normal_leak.max(g.normal_leak);
        out.shape_asymmetry = out.shape_asymmetry.max(g.shape_asymmetry);
    }
    Ok(out)
}
