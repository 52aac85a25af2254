//! Contact hypersurfaces of the quadric pair as explicit principal profiles,
//! Jacobi fields along normal geodesics, and focal distances.
//!
//! A profile is realized at the A-principal model point `N = e_1`, where the
//! Reeb direction `RJN` carries `α`, `JV(A) ∩ C` carries `λ = 0` and
//! `V(A) ∩ C` carries `μ = 2ρ`.
//!
//! For the compact quadric the closed forms `ρ = tan(√2 r)/√2`,
//! `α = -√2 cot(√2 r)` describe the tube of radius `r` around a totally
//! geodesic `Q^{n-1}` with `N` pointing away from it; the real form `S^n`
//! is the other focal set, at distance `π/(2√2) - r` along `N`.
//! [`PrincipalProfile::focal_cores`] returns both.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::contact::{induce_contact_structure, ContactStructure, ShapeData};
use crate::error::{GeometryError, Result};
use crate::linalg::{outer, projector, Operator};
use crate::model_frame::{AmbientKind, AmbientSpec, QuadricSign};

/// First focal radius of the real form `S^n` in `Q^n`: `π / (2√2)`.
pub const COMPACT_FOCAL_RADIUS: f64 = FRAC_PI_2 / SQRT_2;
/// Bracket width for the focal-distance scan.
pub const FOCAL_BRACKET: f64 = 1e-3;
/// Bisection stops once the bracket is this narrow.
pub const FOCAL_BISECTION_TOL: f64 = 1e-12;

/// `(f(r), f'(r))` for `f'' + κ f = 0`, `f(0) = f0`, `f'(0) = f0p`.
pub fn jacobi_solution(kappa: f64, f0: f64, f0p: f64, r: f64) -> (f64, f64) {
    if kappa > 0.0 {
        let w = kappa.sqrt();
        let (s, c) = (w * r).sin_cos();
        (f0 * c + f0p * s / w, -f0 * w * s + f0p * c)
    } else if kappa < 0.0 {
        // exponential basis: a decaying field stays free of cosh/sinh cancellation
        let w = (-kappa).sqrt();
        let grow = 0.5 * (f0 + f0p / w);
        let decay = 0.5 * (f0 - f0p / w);
        let (ep, em) = ((w * r).exp(), (-w * r).exp());
        (grow * ep + decay * em, w * (grow * ep - decay * em))
    } else {
        (f0 + f0p * r, f0p)
    }
}

/// Classical fourth-order Runge-Kutta integration of `f'' = -κ f` from 0 to `r`.
pub fn jacobi_ode_oracle(kappa: f64, f0: f64, f0p: f64, r: f64, step: f64) -> Result<(f64, f64)> {
    if step <= 0.0 || !step.is_finite() {
        return Err(GeometryError::Parameter(format!(
            "integration step must be positive, got {step}"
        )));
    }
    if r == 0.0 {
        return Ok((f0, f0p));
    }
    let steps = (r.abs() / step).ceil().max(1.0) as usize;
    let h = r / steps as f64;
    let rhs = |f: f64, g: f64| (g, -kappa * f);
    let (mut f, mut g) = (f0, f0p);
    for _ in 0..steps {
        let (k1f, k1g) = rhs(f, g);
        let (k2f, k2g) = rhs(f + 0.5 * h * k1f, g + 0.5 * h * k1g);
        let (k3f, k3g) = rhs(f + 0.5 * h * k2f, g + 0.5 * h * k2g);
        let (k4f, k4g) = rhs(f + h * k3f, g + h * k3g);
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    }
    Ok((f, g))
}

/// Which contact hypersurface of the noncompact dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DualCase {
    /// Tube around a totally geodesic `Q^{(n-1)*}`.
    ComplexHypersurfaceTube = 1,
    /// Horosphere centred at an A-principal point at infinity.
    Horosphere = 2,
    /// Tube around the real form `RH^n`.
    RealFormTube = 3,
}

impl TryFrom<u8> for DualCase {
    type Error = GeometryError;

    fn try_from(case: u8) -> Result<Self> {
        match case {
            1 => Ok(DualCase::ComplexHypersurfaceTube),
            2 => Ok(DualCase::Horosphere),
            3 => Ok(DualCase::RealFormTube),
            other => Err(GeometryError::Parameter(format!(
                "case must be 1, 2 or 3, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileKind {
    CompactTube,
    Dual(DualCase),
}

/// Eigenspace label of a profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrincipalLabel {
    /// `RJN`.
    Alpha,
    /// `JV(A) ∩ C`.
    Lambda,
    /// `V(A) ∩ C`.
    Mu,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalProfile {
    pub ambient: AmbientSpec,
    pub kind: ProfileKind,
    pub n: usize,
    /// Tube radius; `None` for the horosphere.
    pub r: Option<f64>,
    pub alpha: f64,
    pub lambda: f64,
    pub mu: f64,
    pub rho: f64,
}

/// Residuals of the defining relations of a profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileResiduals {
    /// `|μ - 2ρ|`.
    pub mu_two_rho: f64,
    /// `|αρ + ε|`.
    pub alpha_rho: f64,
    /// `λ` itself.
    pub lambda_zero: f64,
}

impl PrincipalProfile {
    pub fn epsilon(&self) -> f64 {
        match self.ambient.kind() {
            AmbientKind::Quadric { sign } => sign.epsilon(),
            AmbientKind::Csf { .. } => unreachable!("profiles live in a quadric"),
        }
    }

    pub fn principal_curvature(&self, label: PrincipalLabel) -> f64 {
        match label {
            PrincipalLabel::Alpha => self.alpha,
            PrincipalLabel::Lambda => self.lambda,
            PrincipalLabel::Mu => self.mu,
        }
    }

    pub fn multiplicity(&self, label: PrincipalLabel) -> usize {
        match label {
            PrincipalLabel::Alpha => 1,
            PrincipalLabel::Lambda | PrincipalLabel::Mu => self.n - 1,
        }
    }

    /// `α + (n-1)(λ + μ)`.
    pub fn trace(&self) -> f64 {
        self.alpha + (self.n as f64 - 1.0) * (self.lambda + self.mu)
    }

    pub fn residuals(&self) -> ProfileResiduals {
        ProfileResiduals {
            mu_two_rho: (self.mu - 2.0 * self.rho).abs(),
            alpha_rho: (self.alpha * self.rho + self.epsilon()).abs(),
            lambda_zero: self.lambda.abs(),
        }
    }

    /// Totally geodesic focal submanifolds from which this hypersurface is a tube.
    pub fn focal_cores(&self) -> Vec<FocalCore> {
        use CoreRole::{Normal, Tangent};
        use PrincipalLabel::{Alpha, Lambda, Mu};
        let dir = |label, kappa, role| CoreDirection { label, kappa, role };
        match (self.kind, self.r) {
            (ProfileKind::CompactTube, Some(r)) => vec![
                FocalCore {
                    kind: CoreKind::ComplexQuadricHypersurface,
                    distance: r,
                    along_normal: false,
                    directions: vec![dir(Alpha, 2.0, Normal), dir(Mu, 2.0, Tangent), dir(Lambda, 0.0, Tangent)],
                },
                FocalCore {
                    kind: CoreKind::RealFormSphere,
                    distance: COMPACT_FOCAL_RADIUS - r,
                    along_normal: true,
                    directions: vec![dir(Mu, 2.0, Normal), dir(Alpha, 2.0, Tangent), dir(Lambda, 0.0, Tangent)],
                },
            ],
            (ProfileKind::Dual(DualCase::ComplexHypersurfaceTube), Some(r)) => vec![FocalCore {
                kind: CoreKind::DualComplexQuadricHypersurface,
                distance: r,
                along_normal: true,
                directions: vec![dir(Alpha, -2.0, Normal), dir(Mu, -2.0, Tangent), dir(Lambda, 0.0, Tangent)],
            }],
            (ProfileKind::Dual(DualCase::RealFormTube), Some(r)) => vec![FocalCore {
                kind: CoreKind::RealHyperbolicSpace,
                distance: r,
                along_normal: true,
                directions: vec![dir(Mu, -2.0, Normal), dir(Alpha, -2.0, Tangent), dir(Lambda, 0.0, Tangent)],
            }],
            _ => Vec::new(),
        }
    }

    /// Eigenvalue of the normal Jacobi operator on each labelled eigenspace.
    pub fn jacobi_eigenvalue(&self, label: PrincipalLabel) -> f64 {
        match label {
            PrincipalLabel::Lambda => 0.0,
            PrincipalLabel::Alpha | PrincipalLabel::Mu => 2.0 * self.epsilon(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreKind {
    /// The real form `S^n ⊂ Q^n`.
    RealFormSphere,
    /// Totally geodesic `Q^{n-1} ⊂ Q^n`.
    ComplexQuadricHypersurface,
    /// Totally geodesic `Q^{(n-1)*} ⊂ Q^n*`.
    DualComplexQuadricHypersurface,
    /// The real form `RH^n ⊂ Q^n*`.
    RealHyperbolicSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreRole {
    Tangent,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreDirection {
    pub label: PrincipalLabel,
    pub kappa: f64,
    pub role: CoreRole,
}

impl CoreDirection {
    /// Jacobi initial data at a totally geodesic core.
    pub fn initial_data(&self) -> (f64, f64) {
        match self.role {
            CoreRole::Tangent => (1.0, 0.0),
            CoreRole::Normal => (0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FocalCore {
    pub kind: CoreKind,
    /// Geodesic distance from the hypersurface to the core.
    pub distance: f64,
    /// The core lies in the direction of `N` (so `N` points towards it).
    pub along_normal: bool,
    pub directions: Vec<CoreDirection>,
}

impl FocalCore {
    /// Principal curvature of the hypersurface predicted by `S Y = -Y'`.
    pub fn predicted_curvature(&self, dir: &CoreDirection) -> f64 {
        let (f0, f0p) = dir.initial_data();
        let (f, fp) = jacobi_solution(dir.kappa, f0, f0p, self.distance);
        let outward = -fp / f;
        if self.along_normal {
            -outward
        } else {
            outward
        }
    }

    /// `(κ, s₀)` for the core-tangent directions (cores are totally geodesic).
    pub fn focal_data(&self) -> Vec<(f64, f64)> {
        self.directions
            .iter()
            .filter(|d| d.role == CoreRole::Tangent)
            .map(|d| (d.kappa, 0.0))
            .collect()
    }
}

/// Max deviation between Jacobi-field predictions and the profile's
/// principal curvatures. Horospheres are checked by propagating their own
/// curvatures along `N`, which must stay constant.
pub fn weingarten_residual(p: &PrincipalProfile) -> f64 {
    let cores = p.focal_cores();
    if cores.is_empty() {
        let labels = [PrincipalLabel::Alpha, PrincipalLabel::Lambda, PrincipalLabel::Mu];
        return [0.5, 1.0, 2.0, 5.0]
            .iter()
            .flat_map(|&s| {
                labels.iter().map(move |&l| {
                    let k = p.principal_curvature(l);
                    let (f, fp) = jacobi_solution(p.jacobi_eigenvalue(l), 1.0, -k, s);
                    (-fp / f - k).abs()
                })
            })
            .fold(0.0, f64::max);
    }
    cores
        .iter()
        .flat_map(|core| {
            core.directions
                .iter()
                .map(move |d| (core.predicted_curvature(d) - p.principal_curvature(d.label)).abs())
        })
        .fold(0.0, f64::max)
}

fn check_profile_dimension(n: usize) -> Result<()> {
    if n < 3 {
        return Err(GeometryError::InvalidDimension { n, min: 3 });
    }
    Ok(())
}

/// Contact tube of the compact quadric, `0 < r < π/(2√2)`.
pub fn tube_profile_theorem1(n: usize, r: f64) -> Result<PrincipalProfile> {
    check_profile_dimension(n)?;
    if !(r > 0.0 && r < COMPACT_FOCAL_RADIUS) {
        return Err(GeometryError::FocalRange {
            r,
            range: format!("(0, {COMPACT_FOCAL_RADIUS})"),
        });
    }
    let x = SQRT_2 * r;
    let rho = x.tan() / SQRT_2;
    Ok(PrincipalProfile {
        ambient: AmbientSpec::quadric(n, QuadricSign::Compact)?,
        kind: ProfileKind::CompactTube,
        n,
        r: Some(r),
        alpha: -SQRT_2 / x.tan(),
        lambda: 0.0,
        mu: SQRT_2 * x.tan(),
        rho,
    })
}

/// Contact hypersurfaces of the noncompact dual; `r` is ignored for the horosphere.
pub fn tube_profile_theorem2(case: DualCase, n: usize, r: f64) -> Result<PrincipalProfile> {
    check_profile_dimension(n)?;
    let ambient = AmbientSpec::quadric(n, QuadricSign::Noncompact)?;
    if case != DualCase::Horosphere && !(r > 0.0 && r.is_finite()) {
        return Err(GeometryError::Parameter(format!(
            "tube radius must be positive, got {r}"
        )));
    }
    let x = SQRT_2 * r;
    let (rho, alpha, mu, radius) = match case {
        DualCase::ComplexHypersurfaceTube => (x.tanh() / SQRT_2, SQRT_2 / x.tanh(), SQRT_2 * x.tanh(), Some(r)),
        DualCase::Horosphere => (1.0 / SQRT_2, SQRT_2, SQRT_2, None),
        DualCase::RealFormTube => (1.0 / (SQRT_2 * x.tanh()), SQRT_2 * x.tanh(), SQRT_2 / x.tanh(), Some(r)),
    };
    Ok(PrincipalProfile {
        ambient,
        kind: ProfileKind::Dual(case),
        n,
        r: radius,
        alpha,
        lambda: 0.0,
        mu,
        rho,
    })
}

/// Realizes a profile at `N = e_1`:
/// `S = α ξ⊗ξ + μ P_{V(A)∩C} + λ P_{JV(A)∩C}`.
pub fn profile_shape_operator(p: &PrincipalProfile) -> Result<(ContactStructure, ShapeData)> {
    let frame = p.ambient.frame();
    let cs = induce_contact_structure(frame, &frame.e(0))?;
    let dim = frame.dim();
    let v_c: Vec<_> = (1..p.n).map(|k| frame.e(k)).collect();
    let jv_c: Vec<_> = (1..p.n).map(|k| frame.je(k)).collect();
    let s: Operator = outer(cs.xi(), cs.xi()) * p.alpha
        + projector(dim, &v_c) * p.mu
        + projector(dim, &jv_c) * p.lambda;
    let sd = ShapeData::new(&cs, s)?;
    Ok((cs, sd))
}

/// All `r ∈ (0, r_max]` where some `jacobi_solution(κ, 1, -s₀, r)` vanishes.
pub fn focal_distances(core_principal_data: &[(f64, f64)], r_max: f64) -> Result<Vec<f64>> {
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(GeometryError::Parameter(format!(
            "r_max must be positive, got {r_max}"
        )));
    }
    let mut zeros: Vec<f64> = Vec::new();
    for &(kappa, s0) in core_principal_data {
        let f = |r: f64| jacobi_solution(kappa, 1.0, -s0, r).0;
        let steps = (r_max / FOCAL_BRACKET).ceil() as usize;
        let mut lo = 0.0;
        let mut f_lo = f(lo);
        for i in 1..=steps {
            let hi = (i as f64 * FOCAL_BRACKET).min(r_max);
            let f_hi = f(hi);
            if f_hi == 0.0 {
                zeros.push(hi);
            } else if f_lo != 0.0 && f_lo.signum() != f_hi.signum() {
                zeros.push(bisect(&f, lo, hi));
            }
            lo = hi;
            f_lo = f_hi;
        }
    }
    zeros.sort_by(f64::total_cmp);
    zeros.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    Ok(zeros)
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let s_lo = f(lo).signum();
    while hi - lo > FOCAL_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn flat_jacobi_field_is_constant() {
        for r in [0.0, 0.5, 3.0, 100.0] {
            assert_eq!(jacobi_solution(0.0, 1.0, 0.0, r), (1.0, 0.0));
        }
    }

    #[test]
    fn no_focal_point_before_the_bound() {
        let r0 = 0.7;
        let alpha = -SQRT_2 / (SQRT_2 * r0).tan();
        let (f, _) = jacobi_solution(2.0, 1.0, -alpha, r0);
        let x = SQRT_2 * r0;
        assert!((f - (x.cos() + x.sin() / x.tan())).abs() < 1e-14);
        assert!(f > 0.0);
    }

    #[test]
    fn horosphere_field_decays() {
        for r in [0.5, 2.0, 10.0] {
            let (f, fp) = jacobi_solution(-2.0, 1.0, -SQRT_2, r);
            let e = (-SQRT_2 * r).exp();
            assert!((f - e).abs() < 1e-12 * e.max(1e-300) + 1e-14);
            assert!((fp + SQRT_2 * e).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_step_must_be_positive() {
        assert!(jacobi_ode_oracle(1.0, 1.0, 0.0, 1.0, 0.0).is_err());
        assert!(jacobi_ode_oracle(1.0, 1.0, 0.0, 1.0, -1e-3).is_err());
    }

    #[test]
    fn oracle_is_exact_for_flat_fields() {
        let (f, fp) = jacobi_ode_oracle(0.0, 0.3, -1.7, 2.5, 1e-2).unwrap();
        assert!((f - (0.3 - 1.7 * 2.5)).abs() < 1e-13);
        assert!((fp + 1.7).abs() < 1e-15);
    }

    #[test]
    fn theorem1_rejects_focal_radius() {
        assert!(matches!(
            tube_profile_theorem1(3, COMPACT_FOCAL_RADIUS),
            Err(GeometryError::FocalRange { .. })
        ));
        assert!(tube_profile_theorem1(3, 0.0).is_err());
        assert!(matches!(
            tube_profile_theorem1(2, 0.3),
            Err(GeometryError::InvalidDimension { .. })
        ));
    }

    #[test]
    fn theorem1_at_eighth_turn() {
        let r = PI / (4.0 * SQRT_2);
        let p = tube_profile_theorem1(4, r).unwrap();
        assert!((p.alpha + SQRT_2).abs() < 1e-14);
        assert!((p.mu - SQRT_2).abs() < 1e-14);
        assert!((p.trace() - (-SQRT_2 + 3.0 * SQRT_2)).abs() < 1e-14);
    }

    #[test]
    fn theorem2_cases() {
        let h = tube_profile_theorem2(DualCase::Horosphere, 3, f64::NAN).unwrap();
        assert_eq!((h.alpha, h.mu, h.rho), (SQRT_2, SQRT_2, 1.0 / SQRT_2));
        assert!((h.trace() - 3.0 * SQRT_2).abs() < 1e-14);

        let c1 = tube_profile_theorem2(DualCase::ComplexHypersurfaceTube, 3, 1.0).unwrap();
        let c3 = tube_profile_theorem2(DualCase::RealFormTube, 3, 1.0).unwrap();
        assert_eq!(c1.alpha, c3.mu);
        assert_eq!(c1.mu, c3.alpha);
        assert!(tube_profile_theorem2(DualCase::RealFormTube, 3, 0.0).is_err());
        assert!(DualCase::try_from(4).is_err());
    }

    #[test]
    fn focal_scan_finds_eighth_turn_zero() {
        let z = focal_distances(&[(2.0, SQRT_2)], 2.0).unwrap();
        assert!((z[0] - PI / (4.0 * SQRT_2)).abs() < 1e-11);
        assert!(focal_distances(&[(2.0, 0.0)], 0.0).is_err());
    }
}
