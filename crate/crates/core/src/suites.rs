//! Named verification suites behind the `verify` command.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::contact::{
    asquared_residual, contact_defect, hopf_data, pairing_check, trace_identities, ContactStructure,
    ShapeData,
};
use crate::curvature::{curvature_selftest, random_vector, ricci_operator, SELFTEST_TOL};
use crate::error::GeometryError;
use crate::immersion::checks::{c2_tube_check_on, default_sphere_grid, disk_grid, sphere_check_on};
use crate::immersion::{HolomorphicGraph, DEFAULT_STEP};
use crate::linalg::{op_norm, Operator, Vector};
use crate::model_frame::{rotate_real_structure, AmbientSpec, QuadricSign};
use crate::report::{sort_reports, CheckReport, Params};
use crate::singular::{adapted_decomposition, classify_normal, jn_eigen_defect, SingularType, DEFAULT_TOL_T};
use crate::tube::{
    focal_distances, jacobi_ode_oracle, jacobi_solution, profile_shape_operator, tube_profile_theorem1,
    tube_profile_theorem2, weingarten_residual, CoreKind, DualCase, PrincipalLabel, PrincipalProfile,
    COMPACT_FOCAL_RADIUS,
};

/// Every suite name accepted by [`run_suite`] besides `all`.
pub const SUITES: [&str; 9] = [
    "curvature-selftest",
    "einstein",
    "theorem1",
    "theorem2",
    "singular-sweep",
    "jacobi-oracle",
    "sphere",
    "c2-tube",
    "focal",
];

pub const SELFTEST_TRIALS: usize = 1000;
pub const EINSTEIN_TOL: f64 = 1e-12;
/// Bound for contact defect, pairing and trace identities on exact profiles.
pub const PROFILE_TOL: f64 = 1e-10;
/// Bound for `αρ`, Hopf defect, the `A²` identity and profile relations.
pub const PROFILE_TIGHT_TOL: f64 = 1e-12;
pub const RK4_STEP: f64 = 1e-4;
pub const RK4_AGREEMENT_TOL: f64 = 1e-8;
pub const SWEEP_TOL: f64 = 1e-10;
pub const FOCAL_TOL: f64 = 1e-10;
pub const FOCAL_SEARCH_RADIUS: f64 = 10.0;
pub const SPHERE_XI_TOL: f64 = 1e-8;
pub const SPHERE_FD_TOL: f64 = 1e-5;
pub const SPHERE_RHO_VARIATION_TOL: f64 = 1e-6;
pub const SPHERE_DERIVATIVE_TOL: f64 = 1e-4;
pub const NORMAL_TOL: f64 = 1e-8;
pub const TUBE_FD_TOL: f64 = 1e-4;
/// Halving `h` must shrink every discretization residual by at least this.
pub const CONVERGENCE_FACTOR: f64 = 3.5;
/// The C² tube must show at least this much variation of `ρ`.
pub const TUBE_MIN_RHO_VARIATION: f64 = 0.01;
/// Used for checks whose residual counts failures.
pub const COUNT_TOL: f64 = 0.5;

/// Command-line parameters; `None` selects each suite's default grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub r: Option<f64>,
    pub case: Option<u8>,
    pub h: Option<f64>,
    pub grid: Option<usize>,
    pub seed: u64,
    /// Overrides every report's tolerance.
    pub tol: Option<f64>,
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of {list}, all)", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl SuiteError {
    /// Process exit code: 2 for usage errors, 3 for parameter errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            SuiteError::UnknownSuite(_) => 2,
            SuiteError::Parameter(_) | SuiteError::Geometry(_) => 3,
        }
    }
}

type SuiteResult<T> = std::result::Result<T, SuiteError>;

impl SuiteParams {
    pub fn validate(&self) -> SuiteResult<()> {
        let bad = |msg: String| Err(SuiteError::Parameter(msg));
        if let Some(n) = self.n {
            if n < 2 {
                return bad(format!("--n must be at least 2, got {n}"));
            }
        }
        if let Some(r) = self.r {
            if !(r > 0.0 && r.is_finite()) {
                return bad(format!("--r must be positive, got {r}"));
            }
        }
        if let Some(case) = self.case {
            if !(1..=3).contains(&case) {
                return bad(format!("--case must be 1, 2 or 3, got {case}"));
            }
        }
        if let Some(h) = self.h {
            if !(h > 0.0 && h.is_finite()) {
                return bad(format!("--h must be positive, got {h}"));
            }
        }
        if self.grid == Some(0) {
            return bad("--grid must be at least 1".into());
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return bad(format!("--tol must be positive, got {tol}"));
            }
        }
        Ok(())
    }

    fn step(&self) -> f64 {
        self.h.unwrap_or(DEFAULT_STEP)
    }

    fn dims(&self, default: impl IntoIterator<Item = usize>) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => default.into_iter().collect(),
        }
    }
}

/// Runs a suite and returns its reports in canonical order.
pub fn run_suite(name: &str, params: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    if name != "all" && !SUITES.contains(&name) {
        return Err(SuiteError::UnknownSuite(name.to_string()));
    }
    params.validate()?;
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut reports = Vec::new();
    for suite in names {
        reports.extend(run_one(suite, params)?);
    }
    if let Some(tol) = params.tol {
        reports = reports.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    sort_reports(&mut reports);
    Ok(reports)
}

/// `true` iff every report passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

fn run_one(suite: &str, p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    match suite {
        "curvature-selftest" => selftest_suite(p),
        "einstein" => einstein_suite(p),
        "theorem1" => theorem1_suite(p),
        "theorem2" => theorem2_suite(p),
        "singular-sweep" => singular_sweep_suite(p),
        "jacobi-oracle" => jacobi_oracle_suite(p),
        "sphere" => sphere_suite(p),
        "c2-tube" => c2_tube_suite(p),
        "focal" => focal_suite(p),
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

fn timed<T>(f: impl FnOnce() -> SuiteResult<T>) -> SuiteResult<(T, u64)> {
    let start = Instant::now();
    let value = f()?;
    Ok((value, start.elapsed().as_millis() as u64))
}

fn params(items: &[(&str, crate::report::ParamValue)]) -> Params {
    items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// One ambient of the curvature and Einstein suites, with its Einstein constant.
fn ambients(n: usize) -> SuiteResult<Vec<(Params, AmbientSpec, f64)>> {
    let mut out = Vec::new();
    for c in [-4.0, 0.0, 4.0] {
        let p = params(&[("ambient", "csf".into()), ("c", c.into()), ("n", n.into())]);
        out.push((p, AmbientSpec::csf(n, c)?, (n as f64 + 1.0) * c / 2.0));
    }
    for sign in [QuadricSign::Compact, QuadricSign::Noncompact] {
        let eps = sign.epsilon();
        let p = params(&[("ambient", "quadric".into()), ("epsilon", (eps as i64).into()), ("n", n.into())]);
        out.push((p, AmbientSpec::quadric(n, sign)?, 2.0 * n as f64 * eps));
    }
    Ok(out)
}

fn selftest_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let trials = p.grid.unwrap_or(SELFTEST_TRIALS);
    let mut out = Vec::new();
    for n in p.dims(3..=8) {
        for (mut params, spec, _) in ambients(n)? {
            let (rep, ms) = timed(|| Ok(curvature_selftest(&spec, trials, p.seed)?))?;
            params.insert("seed".into(), p.seed.into());
            params.insert("trials".into(), trials.into());
            out.push(CheckReport::new(
                "curvature_selftest",
                params,
                [
                    ("pair_symmetry", rep.residual_pair_symmetry),
                    ("bianchi", rep.residual_bianchi),
                    ("kahler_invariance", rep.residual_kahler_invariance),
                    ("skew", rep.residual_skew),
                ],
                SELFTEST_TOL,
                ms,
            ));
        }
    }
    Ok(out)
}

fn einstein_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in p.dims(3..=8) {
        for (params, spec, constant) in ambients(n)? {
            let (residual, ms) = timed(|| {
                let dim = spec.dim();
                Ok(op_norm(&(ricci_operator(&spec) - Operator::identity(dim, dim) * constant)))
            })?;
            out.push(CheckReport::new("einstein", params, [("ricci", residual)], EINSTEIN_TOL, ms));
        }
    }
    Ok(out)
}

/// Curvature of each labelled eigenspace predicted by RK4 Jacobi fields,
/// compared against the profile.
fn rk4_profile_residual(profile: &PrincipalProfile) -> SuiteResult<f64> {
    let cores = profile.focal_cores();
    let mut worst: f64 = 0.0;
    if cores.is_empty() {
        for s in [0.5, 1.0, 2.0, 5.0] {
            for label in [PrincipalLabel::Alpha, PrincipalLabel::Lambda, PrincipalLabel::Mu] {
                let k = profile.principal_curvature(label);
                let (f, fp) = jacobi_ode_oracle(profile.jacobi_eigenvalue(label), 1.0, -k, s, RK4_STEP)?;
                worst = worst.max((-fp / f - k).abs());
            }
        }
        return Ok(worst);
    }
    for core in &cores {
        for dir in &core.directions {
            let (f0, f0p) = dir.initial_data();
            let (f, fp) = jacobi_ode_oracle(dir.kappa, f0, f0p, core.distance, RK4_STEP)?;
            let outward = -fp / f;
            let predicted = if core.along_normal { -outward } else { outward };
            worst = worst.max((predicted - profile.principal_curvature(dir.label)).abs());
        }
    }
    Ok(worst)
}

/// The shared battery of contact checks on an exact profile.
fn profile_reports(prefix: &str, params: Params, profile: &PrincipalProfile) -> SuiteResult<Vec<CheckReport>> {
    let start = Instant::now();
    let (cs, sd): (ContactStructure, ShapeData) = profile_shape_operator(profile)?;
    let spec = &profile.ambient;
    let eps = profile.epsilon();
    let defect = contact_defect(&cs, &sd);
    let pairing = pairing_check(&cs, &sd).unwrap_or(f64::INFINITY);
    let asq = asquared_residual(&cs, &sd, spec)?;
    let traces = trace_identities(&cs, &sd, spec)?;
    let hopf = hopf_data(&cs, &sd).defect;
    let decomposition = adapted_decomposition(spec.frame(), cs.normal())?;
    let principal = classify_normal(spec.frame(), cs.normal(), DEFAULT_TOL_T)? == SingularType::APrincipal;
    let rel = profile.residuals();
    let closed = weingarten_residual(profile);
    let rk4 = rk4_profile_residual(profile)?;
    let ms = start.elapsed().as_millis() as u64;

    let name = |s: &str| format!("{prefix}.{s}");
    let mk = |check: &str, residuals: Vec<(&str, f64)>, tol: f64| {
        CheckReport::new(name(check), params.clone(), residuals, tol, ms)
    };
    Ok(vec![
        mk("contact_defect", vec![("contact_defect", defect)], PROFILE_TOL),
        mk("pairing", vec![("pairing", pairing)], PROFILE_TOL),
        mk(
            "trace_identities",
            vec![("trace", traces.trace), ("trace_squared", traces.trace_squared)],
            PROFILE_TOL,
        ),
        mk("asquared", vec![("asquared", asq)], PROFILE_TIGHT_TOL),
        mk("hopf", vec![("hopf_defect", hopf)], PROFILE_TIGHT_TOL),
        mk(
            "alpha_rho",
            vec![("alpha_rho", (sd.alpha() * sd.rho() + eps).abs())],
            PROFILE_TIGHT_TOL,
        ),
        mk(
            "profile_relations",
            vec![("mu_two_rho", rel.mu_two_rho), ("lambda_zero", rel.lambda_zero)],
            PROFILE_TIGHT_TOL,
        ),
        mk("focal_curvatures", vec![("closed_form", closed)], PROFILE_TIGHT_TOL),
        mk("jacobi_rk4", vec![("rk4_vs_profile", rk4)], RK4_AGREEMENT_TOL),
        mk(
            "classification",
            vec![("t", decomposition.t), ("not_principal", if principal { 0.0 } else { 1.0 })],
            DEFAULT_TOL_T,
        ),
    ])
}

/// `m` radii strictly inside `(lo, hi)`.
fn interior_radii(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    (1..=m).map(|k| lo + (hi - lo) * k as f64 / (m + 1) as f64).collect()
}

fn theorem1_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let radii = match p.r {
        Some(r) => vec![r],
        None => interior_radii(0.05, COMPACT_FOCAL_RADIUS - 0.05, p.grid.unwrap_or(20)),
    };
    let mut out = Vec::new();
    for n in p.dims([3, 4, 5]) {
        for &r in &radii {
            let profile = tube_profile_theorem1(n, r)?;
            out.extend(profile_reports("theorem1", params(&[("n", n.into()), ("r", r.into())]), &profile)?);
        }
    }
    Ok(out)
}

fn theorem2_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let cases: Vec<u8> = match p.case {
        Some(c) => vec![c],
        None => vec![1, 2, 3],
    };
    let radii = match p.r {
        Some(r) => vec![r],
        None => vec![0.5, 1.0, 2.0],
    };
    let mut out = Vec::new();
    for n in p.dims([3, 4]) {
        for &c in &cases {
            let case = DualCase::try_from(c)?;
            let case_radii = if case == DualCase::Horosphere { vec![None] } else { radii.iter().map(|&r| Some(r)).collect() };
            for r in case_radii {
                let profile = tube_profile_theorem2(case, n, r.unwrap_or(0.0))?;
                let mut prm = params(&[("case", (c as usize).into()), ("n", n.into())]);
                if let Some(r) = r {
                    prm.insert("r".into(), r.into());
                }
                out.extend(profile_reports("theorem2", prm.clone(), &profile)?);
                if case == DualCase::Horosphere {
                    let residual = (profile.trace() - n as f64 * SQRT_2).abs();
                    out.push(CheckReport::new(
                        "theorem2.horosphere_trace",
                        prm,
                        [("trace_minus_n_sqrt2", residual)],
                        PROFILE_TIGHT_TOL,
                        0,
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn sweep_angles(m: usize) -> Vec<f64> {
    if m == 1 {
        return vec![0.0];
    }
    let mut angles: Vec<f64> = (0..m).map(|k| FRAC_PI_4 * k as f64 / (m - 1) as f64).collect();
    angles[m - 1] = FRAC_PI_4;
    angles
}

fn singular_sweep_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let m = p.grid.unwrap_or(100);
    let angles = sweep_angles(m);
    let mut out = Vec::new();
    for n in p.dims([3]) {
        for sign in [QuadricSign::Compact, QuadricSign::Noncompact] {
            let spec = AmbientSpec::quadric(n, sign)?;
            let frame = spec.frame();
            let prm = params(&[
                ("epsilon", (sign.epsilon() as i64).into()),
                ("grid", m.into()),
                ("n", n.into()),
                ("seed", p.seed.into()),
            ]);
            let ((defect, misclassified), ms) = timed(|| {
                let mut defect: f64 = 0.0;
                let mut misclassified = 0usize;
                let last = angles.len() - 1;
                for (k, &t) in angles.iter().enumerate() {
                    let normal = frame.e(0) * t.cos() + frame.je(1) * t.sin();
                    defect = defect.max((jn_eigen_defect(&spec, &normal)? - (4.0 * t).sin().abs()).abs());
                    let expected = if k == 0 {
                        SingularType::APrincipal
                    } else if k == last {
                        SingularType::AIsotropic
                    } else {
                        SingularType::Generic(t)
                    };
                    let got = classify_normal(frame, &normal, DEFAULT_TOL_T)?;
                    let agrees = match (expected, got) {
                        (SingularType::Generic(_), SingularType::Generic(_)) => true,
                        (a, b) => a == b,
                    };
                    misclassified += usize::from(!agrees);
                }
                Ok((defect, misclassified))
            })?;
            out.push(CheckReport::new(
                "singular_sweep.eigen_defect",
                prm.clone(),
                [("defect_vs_sin4t", defect)],
                SWEEP_TOL,
                ms,
            ));
            out.push(CheckReport::new(
                "singular_sweep.classification",
                prm.clone(),
                [("misclassified", misclassified as f64)],
                COUNT_TOL,
                ms,
            ));

            // normals built from a random point of the circle of real structures
            let ((t_err, recon), ms) = timed(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
                let (mut t_err, mut recon): (f64, f64) = (0.0, 0.0);
                let dim = frame.dim();
                for &t in &angles {
                    let s = rng.random_range(0.0..std::f64::consts::TAU);
                    let a_s = rotate_real_structure(frame, s)?;
                    let to_v = (&a_s + Operator::identity(dim, dim)) * 0.5;
                    let z1 = (&to_v * random_vector(&mut rng, dim)).normalize();
                    let w = &to_v * random_vector(&mut rng, dim);
                    let z2 = (&w - &z1 * z1.dot(&w)).normalize();
                    let normal: Vector = &z1 * t.cos() + frame.apply_j(&z2) * t.sin();
                    let normal = &normal / normal.norm();
                    let d = adapted_decomposition(frame, &normal)?;
                    t_err = t_err.max((d.t - t).abs());
                    recon = recon.max((d.reconstruct(frame) - &normal).norm());
                }
                Ok((t_err, recon))
            })?;
            out.push(CheckReport::new(
                "singular_sweep.decomposition",
                prm,
                [("t_recovery", t_err), ("reconstruction", recon)],
                SWEEP_TOL,
                ms,
            ));
        }
    }
    Ok(out)
}

fn jacobi_oracle_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let samples = p.grid.unwrap_or(100);
    let (worst, ms) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let kappa = rng.random_range(-4.0..=4.0);
            let f0 = rng.random_range(-1.0..=1.0);
            let f0p = rng.random_range(-1.0..=1.0);
            let r = 3.0 * (1.0 - rng.random::<f64>());
            let (f, fp) = jacobi_solution(kappa, f0, f0p, r);
            let (g, gp) = jacobi_ode_oracle(kappa, f0, f0p, r, RK4_STEP)?;
            worst = worst.max((f - g).abs()).max((fp - gp).abs());
        }
        Ok(worst)
    })?;
    Ok(vec![CheckReport::new(
        "jacobi_oracle",
        params(&[("samples", samples.into()), ("seed", p.seed.into()), ("step", RK4_STEP.into())]),
        [("closed_vs_rk4", worst)],
        RK4_AGREEMENT_TOL,
        ms,
    )])
}

fn focal_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let mut out = Vec::new();
    for n in p.dims([3]) {
        let compact = tube_profile_theorem1(n, 0.5 * COMPACT_FOCAL_RADIUS)?;
        let dual = [
            tube_profile_theorem2(DualCase::ComplexHypersurfaceTube, n, 1.0)?,
            tube_profile_theorem2(DualCase::RealFormTube, n, 1.0)?,
        ];
        let cores = compact
            .focal_cores()
            .into_iter()
            .chain(dual.iter().flat_map(|d| d.focal_cores()));
        for core in cores {
            let (zeros, ms) = timed(|| Ok(focal_distances(&core.focal_data(), FOCAL_SEARCH_RADIUS)?))?;
            let (label, compact_core) = match core.kind {
                CoreKind::RealFormSphere => ("real_form_sphere", true),
                CoreKind::ComplexQuadricHypersurface => ("complex_quadric_hypersurface", true),
                CoreKind::DualComplexQuadricHypersurface => ("dual_complex_quadric_hypersurface", false),
                CoreKind::RealHyperbolicSpace => ("real_hyperbolic_space", false),
            };
            let prm = params(&[("n", n.into()), ("r_max", FOCAL_SEARCH_RADIUS.into())]);
            let report = if compact_core {
                let first = zeros.first().copied().unwrap_or(f64::INFINITY);
                CheckReport::new(
                    format!("focal.{label}"),
                    prm,
                    [("first_focal_error", (first - COMPACT_FOCAL_RADIUS).abs())],
                    FOCAL_TOL,
                    ms,
                )
            } else {
                CheckReport::new(
                    format!("focal.{label}"),
                    prm,
                    [("focal_points", zeros.len() as f64)],
                    COUNT_TOL,
                    ms,
                )
            };
            out.push(report);
        }
    }
    Ok(out)
}

fn sphere_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let h = p.step();
    let cases: Vec<(usize, f64)> = match p.n {
        Some(n) => vec![(n, p.r.unwrap_or(2.0))],
        None => vec![(3, p.r.unwrap_or(2.0)), (2, p.r.unwrap_or(1.0))],
    };
    let mut out = Vec::new();
    for (n, r) in cases {
        let mut grid = default_sphere_grid(n);
        if let Some(g) = p.grid {
            grid.points_per_axis = g;
        }
        let prm = params(&[
            ("grid", grid.points_per_axis.into()),
            ("h", h.into()),
            ("n", n.into()),
            ("r", r.into()),
        ]);
        let ((c, half), ms) = timed(|| {
            let c = sphere_check_on(n, r, h, &grid)?;
            let half = sphere_check_on(n, r, 0.5 * h, &grid)?;
            Ok((c, half))
        })?;
        let mk = |check: &str, residuals: Vec<(&str, f64)>, tol: f64| {
            CheckReport::new(format!("sphere.{check}"), prm.clone(), residuals, tol, ms)
        };
        out.push(mk("reeb_field", vec![("xi_plus_iz_over_r", c.xi_residual)], SPHERE_XI_TOL));
        out.push(mk("contact_defect", vec![("contact_defect", c.contact_defect)], SPHERE_FD_TOL));
        out.push(mk("shape_operator", vec![("shape_plus_id_over_r", c.shape_residual)], SPHERE_FD_TOL));
        out.push(mk("rho_constant", vec![("rho_variation", c.rho_variation)], SPHERE_RHO_VARIATION_TOL));
        out.push(mk("trace_derivative", vec![("dtrace_contact", c.dtrace_contact)], SPHERE_DERIVATIVE_TOL));
        out.push(mk("d_eta", vec![("deta_plus_2omega_over_r", c.deta_relative)], SPHERE_FD_TOL));
        out.push(mk("d_omega", vec![("domega_relative", c.domega_relative)], SPHERE_DERIVATIVE_TOL));
        out.push(mk("pairing", vec![("pairing", c.pairing)], 5.0 * h * h));
        out.push(mk("normal_orthogonality", vec![("normal_leak", c.normal_leak)], NORMAL_TOL));
        out.push(mk("shape_symmetry", vec![("asymmetry", c.shape_asymmetry)], 10.0 * h * h));
        if let Some(ok) = c.dim2_contact {
            out.push(mk("dim2_contact", vec![("failed", if ok { 0.0 } else { 1.0 })], COUNT_TOL));
        }
        let ratio = |a: f64, b: f64| if a > 0.0 { b / a } else { 0.0 };
        out.push(mk(
            "convergence",
            vec![
                ("d_eta", ratio(c.deta_relative, half.deta_relative)),
                ("d_omega", ratio(c.domega, half.domega)),
                ("rho_variation", ratio(c.rho_variation, half.rho_variation)),
                ("shape_operator", ratio(c.shape_residual, half.shape_residual)),
                ("trace_derivative", ratio(c.dtrace_contact, half.dtrace_contact)),
            ],
            1.0 / CONVERGENCE_FACTOR,
        ));
    }
    Ok(out)
}

fn c2_tube_suite(p: &SuiteParams) -> SuiteResult<Vec<CheckReport>> {
    let h = p.step();
    let r = p.r.unwrap_or(0.5);
    let points = p.grid.unwrap_or(5);
    let prm = params(&[("grid", points.into()), ("h", h.into()), ("r", r.into())]);
    let (c, ms) = timed(|| Ok(c2_tube_check_on(HolomorphicGraph::half_square(), r, h, &disk_grid(0.3, points, 3))?))?;
    let mk = |check: &str, residuals: Vec<(&str, f64)>, tol: f64| {
        CheckReport::new(format!("c2_tube.{check}"), prm.clone(), residuals, tol, ms)
    };
    Ok(vec![
        mk("principal_curvatures", vec![("curvature_residual", c.curvature_residual)], TUBE_FD_TOL),
        mk("contact_defect", vec![("contact_defect", c.contact_defect)], TUBE_FD_TOL),
        mk("reeb_curvature", vec![("alpha_plus_inverse_r", c.alpha_residual)], TUBE_FD_TOL),
        mk("pairing", vec![("pairing", c.pairing)], 5.0 * h * h),
        mk("dim2_contact", vec![("failed", if c.dim2_contact { 0.0 } else { 1.0 })], COUNT_TOL),
        // passes iff ρ varies by more than the threshold
        mk(
            "rho_inhomogeneous",
            vec![("threshold_over_variation", TUBE_MIN_RHO_VARIATION / c.rho_variation())],
            1.0,
        ),
        mk("normal_orthogonality", vec![("normal_leak", c.normal_leak)], NORMAL_TOL),
        mk("shape_symmetry", vec![("asymmetry", c.shape_asymmetry)], 10.0 * h * h),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        let err = run_suite("bogus", &SuiteParams::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bad_parameters_exit_three() {
        let p = SuiteParams {
            case: Some(4),
            ..Default::default()
        };
        assert_eq!(run_suite("theorem2", &p).unwrap_err().exit_code(), 3);
        let p = SuiteParams {
            r: Some(2.0),
            ..Default::default()
        };
        assert_eq!(run_suite("theorem1", &p).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn theorem1_example_passes() {
        let p = SuiteParams {
            n: Some(3),
            r: Some(0.3),
            ..Default::default()
        };
        let reports = run_suite("theorem1", &p).unwrap();
        assert!(all_pass(&reports), "{reports:#?}");
        let names: Vec<_> = reports.iter().map(|r| r.check_name.as_str()).collect();
        for want in ["theorem1.contact_defect", "theorem1.asquared", "theorem1.trace_identities"] {
            assert!(names.contains(&want));
        }
    }

    #[test]
    fn sweep_example_passes() {
        let p = SuiteParams {
            grid: Some(100),
            ..Default::default()
        };
        let reports = run_suite("singular-sweep", &p).unwrap();
        assert!(all_pass(&reports), "{reports:#?}");
    }
}
