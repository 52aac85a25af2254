//! Almost contact metric structure induced on a hypersurface tangent space,
//! and the pointwise identities satisfied by contact hypersurfaces.
//!
//! Operators on `TM = N^⊥` are stored as ambient `2n x 2n` matrices that
//! annihilate `N` and take values in `TM`; norms of such operators equal
//! their norms on `TM`.
//!
//! Sign convention: `S X = -∇̄_X N`. With the outward normal of a round
//! sphere of radius `r` in `C^n` this gives `S = -(1/r) Id` and `ρ = -1/r`.

use crate::curvature::{curvature, ricci_operator, UNIT_TOL};
use crate::error::{GeometryError, Result};
use crate::linalg::{
    asymmetry, cluster_eigenvalues, from_columns, op_norm, outer, projector, sorted_symmetric_eigen,
    Operator, Vector,
};
use crate::model_frame::{orthonormal_complement, AmbientSpec, ModelFrame};

/// Threshold below which `Sφ + φS - 2ρφ` counts as zero for preconditions.
pub const CONTACT_PRECONDITION_TOL: f64 = 1e-8;
/// Hopf precondition threshold for the complex-dimension-two test.
pub const HOPF_PRECONDITION_TOL: f64 = 1e-8;
/// Eigenvalues closer than this share an eigenspace.
pub const EIGEN_MERGE_TOL: f64 = 1e-9;
/// `|tr S - α|` must exceed this for the dimension-two contact test.
pub const DIM2_TRACE_GAP: f64 = 1e-8;
/// Shape operators must be symmetric to this level.
pub const SHAPE_SYMMETRY_TOL: f64 = 1e-10;

/// `(φ, ξ, η, ω)` together with the unit normal `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactStructure {
    n: usize,
    j: Operator,
    normal: Vector,
    xi: Vector,
    phi: Operator,
    contact_basis: Vec<Vector>,
}

/// Residuals of the structure identities of a [`ContactStructure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureResiduals {
    pub xi_unit: f64,
    pub phi_xi: f64,
    pub phi_squared: f64,
    pub omega_skew: f64,
}

impl StructureResiduals {
    pub fn max(&self) -> f64 {
        self.xi_unit
            .max(self.phi_xi)
            .max(self.phi_squared)
            .max(self.omega_skew)
    }
}

/// Induces the almost contact metric structure from a unit normal.
pub fn induce_contact_structure(frame: &ModelFrame, normal: &Vector) -> Result<ContactStructure> {
    let norm = normal.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(GeometryError::NotUnit { norm });
    }
    if normal.len() != frame.dim() {
        return Err(GeometryError::Parameter(format!(
            "normal of length {} in a frame of real dimension {}",
            normal.len(),
            frame.dim()
        )));
    }
    let dim = frame.dim();
    let jn = frame.apply_j(normal);
    let xi = -&jn;
    let p = Operator::identity(dim, dim) - outer(normal, normal);
    let phi = &p * frame.j() * &p;
    let contact_basis = orthonormal_complement(frame, &[normal.clone(), jn])?;
    Ok(ContactStructure {
        n: frame.n(),
        j: frame.j().clone(),
        normal: normal.clone(),
        xi,
        phi,
        contact_basis,
    })
}

impl ContactStructure {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    /// Reeb vector `ξ = -JN`.
    pub fn xi(&self) -> &Vector {
        &self.xi
    }

    pub fn j(&self) -> &Operator {
        &self.j
    }

    pub fn eta(&self, x: &Vector) -> f64 {
        x.dot(&self.xi)
    }

    pub fn phi(&self) -> &Operator {
        &self.phi
    }

    pub fn omega(&self, x: &Vector, y: &Vector) -> f64 {
        (&self.phi * x).dot(y)
    }

    /// Orthonormal basis of the maximal complex subspace `C = ker η`.
    pub fn contact_basis(&self) -> &[Vector] {
        &self.contact_basis
    }

    /// `ξ` followed by the basis of `C`.
    pub fn tangent_basis(&self) -> Vec<Vector> {
        std::iter::once(self.xi.clone())
            .chain(self.contact_basis.iter().cloned())
            .collect()
    }

    pub fn tangent_projector(&self) -> Operator {
        Operator::identity(self.dim(), self.dim()) - outer(&self.normal, &self.normal)
    }

    pub fn contact_projector(&self) -> Operator {
        projector(self.dim(), &self.contact_basis)
    }

    /// The structure induced by the opposite normal `-N`.
    pub fn flipped(&self) -> ContactStructure {
        ContactStructure {
            n: self.n,
            j: self.j.clone(),
            normal: -&self.normal,
            xi: -&self.xi,
            phi: self.phi.clone(),
            contact_basis: self.contact_basis.clone(),
        }
    }

    pub fn residuals(&self) -> StructureResiduals {
        let p = self.tangent_projector();
        let phi2 = &self.phi * &self.phi;
        let expected = -&p + outer(&self.xi, &self.xi);
        StructureResiduals {
            xi_unit: (self.xi.norm() - 1.0).abs(),
            phi_xi: (&self.phi * &self.xi).norm(),
            phi_squared: (phi2 - expected).amax(),
            // ω(X,Y) = <φX,Y> is skew iff the tangential block of φ is.
            omega_skew: (&self.phi + self.phi.transpose()).amax(),
        }
    }
}

/// Shape operator with its Reeb curvature `α` and contact constant `ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeData {
    s: Operator,
    alpha: f64,
    rho: f64,
}

impl ShapeData {
    /// Wraps an ambient-coordinate shape operator, recovering `ρ` from the
    /// trace identity `tr S = α + 2(n-1)ρ`.
    pub fn new(cs: &ContactStructure, s: Operator) -> Result<Self> {
        validate_shape(cs, &s)?;
        let alpha = cs.xi().dot(&(&s * cs.xi()));
        let rho = rho_from_trace(s.trace(), alpha, cs.n())?;
        Ok(ShapeData { s, alpha, rho })
    }

    /// Wraps a shape operator with a prescribed `ρ`.
    pub fn with_rho(cs: &ContactStructure, s: Operator, rho: f64) -> Result<Self> {
        validate_shape(cs, &s)?;
        let alpha = cs.xi().dot(&(&s * cs.xi()));
        Ok(ShapeData { s, alpha, rho })
    }

    /// Builds `S` from its matrix in [`ContactStructure::tangent_basis`] coordinates.
    pub fn from_tangent_matrix(cs: &ContactStructure, m: &Operator) -> Result<Self> {
        let basis = from_columns(&cs.tangent_basis());
        if m.nrows() != basis.ncols() || m.ncols() != basis.ncols() {
            return Err(GeometryError::Parameter(format!(
                "tangent matrix must be {0}x{0}",
                basis.ncols()
            )));
        }
        Self::new(cs, &basis * m * basis.transpose())
    }

    pub fn operator(&self) -> &Operator {
        &self.s
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Shape data for the opposite normal: every sign flips.
    pub fn flipped(&self) -> ShapeData {
        ShapeData {
            s: -&self.s,
            alpha: -self.alpha,
            rho: -self.rho,
        }
    }
}

fn validate_shape(cs: &ContactStructure, s: &Operator) -> Result<()> {
    let dim = cs.dim();
    if s.nrows() != dim || s.ncols() != dim {
        return Err(GeometryError::Parameter(format!(
            "shape operator must be {dim}x{dim}, got {}x{}",
            s.nrows(),
            s.ncols()
        )));
    }
    let asym = asymmetry(s);
    if asym > SHAPE_SYMMETRY_TOL {
        return Err(GeometryError::Precondition(format!(
            "shape operator not symmetric (residual {asym:e})"
        )));
    }
    let leak = (s * cs.normal()).norm();
    if leak > SHAPE_SYMMETRY_TOL {
        return Err(GeometryError::Precondition(format!(
            "shape operator does not annihilate the normal (residual {leak:e})"
        )));
    }
    Ok(())
}

fn rho_from_trace(trace: f64, alpha: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(GeometryError::InvalidDimension { n, min: 2 });
    }
    Ok((trace - alpha) / (2.0 * (n as f64 - 1.0)))
}

/// The unique `ρ` consistent with `tr S = α + 2(n-1)ρ`.
pub fn contact_rho(cs: &ContactStructure, s: &Operator) -> Result<f64> {
    let alpha = cs.xi().dot(&(s * cs.xi()));
    rho_from_trace(s.trace(), alpha, cs.n())
}

/// Operator norm of `Sφ + φS - 2ρφ` on `TM`.
pub fn contact_defect(cs: &ContactStructure, sd: &ShapeData) -> f64 {
    let s = sd.operator();
    let phi = cs.phi();
    op_norm(&(s * phi + phi * s - phi * (2.0 * sd.rho())))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfData {
    pub alpha: f64,
    pub defect: f64,
}

/// `α = <Sξ,ξ>` and `‖Sξ - αξ‖`.
pub fn hopf_data(cs: &ContactStructure, sd: &ShapeData) -> HopfData {
    let sxi = sd.operator() * cs.xi();
    let alpha = sxi.dot(cs.xi());
    HopfData {
        alpha,
        defect: (sxi - cs.xi() * alpha).norm(),
    }
}

/// Outcome of a pointwise contact test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContactVerdict {
    Contact { rho: f64, defect: f64 },
    /// `ρ` vanishes, so `dη = 2ρω` cannot define a contact form.
    DegenerateRho { rho: f64 },
    NotContact { defect: f64 },
}

impl ContactVerdict {
    pub fn is_contact(&self) -> bool {
        matches!(self, ContactVerdict::Contact { .. })
    }
}

/// Pointwise contact test at tolerance `tol`.
pub fn verify_contact(cs: &ContactStructure, sd: &ShapeData, tol: f64) -> ContactVerdict {
    let defect = contact_defect(cs, sd);
    if defect >= tol {
        ContactVerdict::NotContact { defect }
    } else if sd.rho().abs() <= tol {
        ContactVerdict::DegenerateRho { rho: sd.rho() }
    } else {
        ContactVerdict::Contact {
            rho: sd.rho(),
            defect,
        }
    }
}

/// An eigenvalue of `S` restricted to `C` with an orthonormal eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenspace {
    pub value: f64,
    pub basis: Vec<Vector>,
}

/// Eigen-decomposition of `S` restricted to `C`; eigenvalues within
/// [`EIGEN_MERGE_TOL`] are merged.
pub fn contact_spectrum(cs: &ContactStructure, sd: &ShapeData) -> Vec<Eigenspace> {
    let basis = from_columns(cs.contact_basis());
    let restricted = basis.transpose() * sd.operator() * &basis;
    let (values, vectors) = sorted_symmetric_eigen(&restricted);
    let clusters = cluster_eigenvalues(&values, EIGEN_MERGE_TOL);
    let mut out = Vec::with_capacity(clusters.len());
    let mut offset = 0;
    for (value, mult) in clusters {
        let vecs = vectors[offset..offset + mult]
            .iter()
            .map(|v| &basis * v)
            .collect();
        out.push(Eigenspace { value, basis: vecs });
        offset += mult;
    }
    out
}

/// Eigenvalues of `S` on `C`, ascending, with multiplicity.
pub fn contact_eigenvalues(cs: &ContactStructure, sd: &ShapeData) -> Vec<f64> {
    let basis = from_columns(cs.contact_basis());
    sorted_symmetric_eigen(&(basis.transpose() * sd.operator() * &basis)).0
}

/// `max ‖SφX - (2ρ - λ)φX‖` over eigenpairs `(λ, X)` of `S` on `C`.
pub fn pairing_check(cs: &ContactStructure, sd: &ShapeData) -> Result<f64> {
    let defect = contact_defect(cs, sd);
    if defect >= CONTACT_PRECONDITION_TOL {
        return Err(GeometryError::Precondition(format!(
            "pairing requires contact data (defect {defect:e})"
        )));
    }
    Ok(pairing_residual(cs, sd))
}

/// The pairing residual without the contact precondition.
pub fn pairing_residual(cs: &ContactStructure, sd: &ShapeData) -> f64 {
    let s = sd.operator();
    contact_spectrum(cs, sd)
        .iter()
        .flat_map(|es| {
            es.basis.iter().map(move |x| {
                let phix = cs.phi() * x;
                (s * &phix - &phix * (2.0 * sd.rho() - es.value)).norm()
            })
        })
        .fold(0.0, f64::max)
}

/// Distance between the sorted `C`-spectrum and its image under `λ -> 2ρ - λ`.
pub fn pairing_multiset_defect(cs: &ContactStructure, sd: &ShapeData) -> f64 {
    let values = contact_eigenvalues(cs, sd);
    let mut mirrored: Vec<f64> = values.iter().map(|l| 2.0 * sd.rho() - l).collect();
    mirrored.sort_by(f64::total_cmp);
    values
        .iter()
        .zip(&mirrored)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

fn check_same_frame(cs: &ContactStructure, spec: &AmbientSpec) -> Result<()> {
    if spec.n() != cs.n() {
        return Err(GeometryError::WrongDimension {
            expected: spec.n(),
            got: cs.n(),
        });
    }
    Ok(())
}

/// `max_X ‖2(S² - 2ρS + αρ)X - (R̄(JN,N)JX)_C‖` over a basis of `C`.
pub fn asquared_residual(cs: &ContactStructure, sd: &ShapeData, spec: &AmbientSpec) -> Result<f64> {
    check_same_frame(cs, spec)?;
    let s = sd.operator();
    let (alpha, rho) = (sd.alpha(), sd.rho());
    let n = cs.normal();
    let jn = cs.j() * n;
    let pc = cs.contact_projector();
    let residual = cs
        .contact_basis()
        .iter()
        .map(|x| {
            let sx = s * x;
            let lhs = (s * &sx - &sx * (2.0 * rho) + x * (alpha * rho)) * 2.0;
            let rhs = &pc * curvature(spec, &jn, n, &(cs.j() * x));
            (lhs - rhs).norm()
        })
        .fold(0.0, f64::max);
    Ok(residual)
}

/// Residuals of `tr S = α + 2(n-1)ρ` and of the `tr S²` formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceResiduals {
    pub trace: f64,
    pub trace_squared: f64,
}

pub fn trace_identities(
    cs: &ContactStructure,
    sd: &ShapeData,
    spec: &AmbientSpec,
) -> Result<TraceResiduals> {
    check_same_frame(cs, spec)?;
    let s = sd.operator();
    let (alpha, rho) = (sd.alpha(), sd.rho());
    let nf = cs.n() as f64;
    let n = cs.normal();
    let jn = cs.j() * n;
    let ric_nn = n.dot(&(ricci_operator(spec) * n));
    let rjn = curvature(spec, &jn, n, n).dot(&jn);
    let trace = (s.trace() - alpha - 2.0 * (nf - 1.0) * rho).abs();
    let expected_sq = alpha * alpha + 2.0 * (nf - 1.0) * rho * (2.0 * rho - alpha) - ric_nn + rjn;
    let trace_squared = ((s * s).trace() - expected_sq).abs();
    Ok(TraceResiduals {
        trace,
        trace_squared,
    })
}

/// Pointwise contact test in complex dimension two: Hopf and `tr S != α`.
pub fn dim2_contact_check(cs: &ContactStructure, sd: &ShapeData) -> Result<bool> {
    dim2_contact_check_with_tol(cs, sd, HOPF_PRECONDITION_TOL)
}

/// As [`dim2_contact_check`] with an explicit Hopf tolerance, for
/// discretized data whose Hopf defect is only small to truncation order.
pub fn dim2_contact_check_with_tol(
    cs: &ContactStructure,
    sd: &ShapeData,
    hopf_tol: f64,
) -> Result<bool> {
    if cs.n() != 2 {
        return Err(GeometryError::WrongDimension {
            expected: 2,
            got: cs.n(),
        });
    }
    let hopf = hopf_data(cs, sd);
    if hopf.defect >= hopf_tol {
        return Err(GeometryError::Precondition(format!(
            "not Hopf at this point (defect {:e})",
            hopf.defect
        )));
    }
    Ok((sd.operator().trace() - hopf.alpha).abs() > DIM2_TRACE_GAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_frame::{make_model_frame, QuadricSign};

    fn generic_normal(frame: &ModelFrame) -> Vector {
        let v: Vec<f64> = (0..frame.dim()).map(|k| ((k * 7 + 3) as f64).sin()).collect();
        Vector::from_vec(v).normalize()
    }

    fn umbilic(cs: &ContactStructure, rho: f64, alpha: f64) -> Operator {
        let p = cs.tangent_projector();
        let xx = outer(cs.xi(), cs.xi());
        (&p - &xx) * rho + xx * alpha
    }

    #[test]
    fn structure_identities_hold() {
        let f = make_model_frame(3, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        assert!(cs.residuals().max() < 1e-12);
        assert!((cs.eta(cs.xi()) - 1.0).abs() < 1e-14);
        assert!((cs.phi() * cs.xi()).norm() < 1e-14);
        // φ² = -Id on C
        for x in cs.contact_basis() {
            assert!((cs.phi() * (cs.phi() * x) + x).norm() < 1e-12);
        }
    }

    #[test]
    fn a_principal_reeb_vector_lies_in_jv() {
        let f = make_model_frame(3, true).unwrap();
        let cs = induce_contact_structure(&f, &f.e(0)).unwrap();
        let a = f.a().unwrap();
        assert!((cs.xi().dot(&(a * cs.xi())) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_unit_normal() {
        let f = make_model_frame(2, false).unwrap();
        let err = induce_contact_structure(&f, &(f.e(0) * 2.0)).unwrap_err();
        assert!(matches!(err, GeometryError::NotUnit { .. }));
    }

    #[test]
    fn umbilic_on_c_is_contact() {
        let f = make_model_frame(3, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        let sd = ShapeData::new(&cs, umbilic(&cs, 0.7, -1.3)).unwrap();
        assert!((sd.rho() - 0.7).abs() < 1e-14);
        assert!(contact_defect(&cs, &sd) < 1e-14);
        assert!(pairing_check(&cs, &sd).unwrap() < 1e-14);
        assert!(verify_contact(&cs, &sd, 1e-10).is_contact());
    }

    #[test]
    fn rank_one_projection_is_not_contact() {
        let f = make_model_frame(3, false).unwrap();
        let cs = induce_contact_structure(&f, &f.e(0)).unwrap();
        let x0 = cs.contact_basis()[0].clone();
        let sd = ShapeData::with_rho(&cs, outer(&x0, &x0), 1.0).unwrap();
        let phix0 = (cs.phi() * &x0).norm();
        // applying the defect operator to X0 gives -φX0
        assert!(contact_defect(&cs, &sd) >= phix0 - 1e-14);
        assert!(phix0 > 0.99);
        assert!(matches!(
            pairing_check(&cs, &sd),
            Err(GeometryError::Precondition(_))
        ));
    }

    #[test]
    fn hopf_identity_and_tilted_reeb() {
        let f = make_model_frame(3, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        let sd = ShapeData::new(&cs, cs.tangent_projector()).unwrap();
        let h = hopf_data(&cs, &sd);
        assert!((h.alpha - 1.0).abs() < 1e-14 && h.defect < 1e-14);

        let x0 = cs.contact_basis()[1].clone();
        let tilt = (outer(cs.xi(), &x0) + outer(&x0, cs.xi())) * 0.3;
        let sd = ShapeData::new(&cs, tilt).unwrap();
        assert!(hopf_data(&cs, &sd).defect >= 0.3 - 1e-14);
    }

    #[test]
    fn sphere_shape_gives_rho_minus_inverse_radius() {
        let f = make_model_frame(4, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        let r = 2.5;
        let s = cs.tangent_projector() * (-1.0 / r);
        assert!((contact_rho(&cs, &s).unwrap() + 1.0 / r).abs() < 1e-14);
        let sd = ShapeData::new(&cs, s).unwrap();
        let flat = AmbientSpec::csf(4, 0.0).unwrap();
        assert!(asquared_residual(&cs, &sd, &flat).unwrap() < 1e-12);
        let tr = trace_identities(&cs, &sd, &flat).unwrap();
        assert!(tr.trace < 1e-12 && tr.trace_squared < 1e-12);
    }

    #[test]
    fn inverse_of_umbilic_construction() {
        let f = make_model_frame(2, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        let s = umbilic(&cs, -0.25, 3.0);
        assert!((contact_rho(&cs, &s).unwrap() + 0.25).abs() < 1e-14);
    }

    #[test]
    fn dimension_two_criterion() {
        let f = make_model_frame(2, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        // λ + μ = 0 on C: Hopf, minimal on C, not contact
        let m = Operator::from_diagonal(&Vector::from_vec(vec![0.8, 1.0, -1.0]));
        let sd = ShapeData::from_tangent_matrix(&cs, &m).unwrap();
        assert!(!dim2_contact_check(&cs, &sd).unwrap());
        assert!(matches!(
            verify_contact(&cs, &sd, 1e-10),
            ContactVerdict::DegenerateRho { .. }
        ));

        let m = Operator::from_diagonal(&Vector::from_vec(vec![0.8, 2.0, -0.5]));
        let sd = ShapeData::from_tangent_matrix(&cs, &m).unwrap();
        assert!(dim2_contact_check(&cs, &sd).unwrap());

        let f3 = make_model_frame(3, false).unwrap();
        let cs3 = induce_contact_structure(&f3, &f3.e(0)).unwrap();
        let sd3 = ShapeData::new(&cs3, cs3.tangent_projector()).unwrap();
        assert!(matches!(
            dim2_contact_check(&cs3, &sd3),
            Err(GeometryError::WrongDimension { .. })
        ));
    }

    #[test]
    fn orientation_flip() {
        let f = make_model_frame(3, false).unwrap();
        let cs = induce_contact_structure(&f, &generic_normal(&f)).unwrap();
        let sd = ShapeData::new(&cs, umbilic(&cs, 0.4, 2.0)).unwrap();
        let (cs2, sd2) = (cs.flipped(), sd.flipped());
        let direct = induce_contact_structure(&f, &-cs.normal()).unwrap();
        assert!((direct.phi() - cs.phi()).amax() < 1e-14);
        assert!((cs2.phi() - direct.phi()).amax() < 1e-14);
        let recomputed = ShapeData::new(&direct, -sd.operator()).unwrap();
        assert!((recomputed.rho() + sd.rho()).abs() < 1e-14);
        assert!((recomputed.alpha() + sd.alpha()).abs() < 1e-14);
        assert!((contact_defect(&cs2, &sd2) - contact_defect(&cs, &sd)).abs() < 1e-12);
    }

    #[test]
    fn asymmetric_shape_rejected() {
        let f = make_model_frame(2, false).unwrap();
        let cs = induce_contact_structure(&f, &f.e(0)).unwrap();
        let mut s = cs.tangent_projector();
        s[(1, 2)] += 1e-6;
        assert!(ShapeData::new(&cs, s).is_err());
    }

    #[test]
    fn frame_dimension_mismatch() {
        let f = make_model_frame(3, true).unwrap();
        let cs = induce_contact_structure(&f, &f.e(0)).unwrap();
        let sd = ShapeData::new(&cs, cs.tangent_projector()).unwrap();
        let spec = AmbientSpec::quadric(4, QuadricSign::Compact).unwrap();
        assert!(asquared_residual(&cs, &sd, &spec).is_err());
    }
}
