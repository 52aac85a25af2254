//! Python bindings for `kahler_contact`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use kahler_contact::contact::{asquared_residual, contact_defect, hopf_data, pairing_check, trace_identities};
use kahler_contact::curvature::{curvature, curvature_selftest, ricci_operator};
use kahler_contact::immersion::{self, HolomorphicGraph};
use kahler_contact::model_frame::{AmbientSpec, QuadricSign};
use kahler_contact::report::{CheckReport, ParamValue};
use kahler_contact::singular::{adapted_decomposition, classify_normal as classify, jn_eigen_defect as jn_defect, SingularType, DEFAULT_TOL_T};
use kahler_contact::suites::{self, SuiteParams};
use kahler_contact::tube::{self, DualCase, PrincipalLabel};
use kahler_contact::{GeometryError, Operator, Vector};

fn err(e: GeometryError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vector(v: Vec<f64>) -> Vector {
    Vector::from_vec(v)
}

fn rows(m: &Operator) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// Tangent space of a model ambient: CP^n/C^n/CH^n or the quadric pair.
#[pyclass(name = "Ambient", frozen)]
struct PyAmbient {
    inner: AmbientSpec,
}

#[pymethods]
impl PyAmbient {
    /// Constant holomorphic sectional curvature `c`.
    #[staticmethod]
    fn csf(n: usize, c: f64) -> PyResult<Self> {
        Ok(PyAmbient {
            inner: AmbientSpec::csf(n, c).map_err(err)?,
        })
    }

    /// The complex quadric (`epsilon = 1`) or its noncompact dual (`epsilon = -1`).
    #[staticmethod]
    fn quadric(n: usize, epsilon: i32) -> PyResult<Self> {
        let sign = QuadricSign::try_from(epsilon).map_err(err)?;
        Ok(PyAmbient {
            inner: AmbientSpec::quadric(n, sign).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// `R(x, y) z`.
    fn curvature(&self, x: Vec<f64>, y: Vec<f64>, z: Vec<f64>) -> PyResult<Vec<f64>> {
        let dim = self.inner.dim();
        if x.len() != dim || y.len() != dim || z.len() != dim {
            return Err(PyValueError::new_err(format!("vectors must have length {dim}")));
        }
        Ok(curvature(&self.inner, &vector(x), &vector(y), &vector(z)).iter().copied().collect())
    }

    /// Ricci operator as a list of rows.
    fn ricci(&self) -> Vec<Vec<f64>> {
        rows(&ricci_operator(&self.inner))
    }

    /// Max residuals of the curvature identities over random quadruples.
    #[pyo3(signature = (trials = 1000, seed = 0))]
    fn selftest<'py>(&self, py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
        let rep = curvature_selftest(&self.inner, trials, seed).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("pair_symmetry", rep.residual_pair_symmetry)?;
        d.set_item("bianchi", rep.residual_bianchi)?;
        d.set_item("kahler_invariance", rep.residual_kahler_invariance)?;
        d.set_item("skew", rep.residual_skew)?;
        d.set_item("trials", rep.trials)?;
        Ok(d)
    }
}

/// Principal curvature data of a contact hypersurface of the quadric pair.
#[pyclass(name = "Profile", frozen)]
struct PyProfile {
    inner: tube::PrincipalProfile,
}

#[pymethods]
impl PyProfile {
    /// Tube of radius `r` in the compact quadric.
    #[staticmethod]
    fn theorem1(n: usize, r: f64) -> PyResult<Self> {
        Ok(PyProfile {
            inner: tube::tube_profile_theorem1(n, r).map_err(err)?,
        })
    }

    /// Case 1, 2 or 3 of the noncompact dual; `r` is ignored for case 2.
    #[staticmethod]
    #[pyo3(signature = (case, n, r = 1.0))]
    fn theorem2(case: u8, n: usize, r: f64) -> PyResult<Self> {
        let case = DualCase::try_from(case).map_err(err)?;
        Ok(PyProfile {
            inner: tube::tube_profile_theorem2(case, n, r).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn r(&self) -> Option<f64> {
        self.inner.r
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.principal_curvature(PrincipalLabel::Alpha)
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.inner.principal_curvature(PrincipalLabel::Lambda)
    }

    #[getter]
    fn mu(&self) -> f64 {
        self.inner.principal_curvature(PrincipalLabel::Mu)
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho
    }

    fn trace(&self) -> f64 {
        self.inner.trace()
    }

    /// Residuals of the contact identities on the realized shape operator.
    fn contact_residuals<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let (cs, sd) = tube::profile_shape_operator(&self.inner).map_err(err)?;
        let spec = &self.inner.ambient;
        let traces = trace_identities(&cs, &sd, spec).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("contact_defect", contact_defect(&cs, &sd))?;
        d.set_item("pairing", pairing_check(&cs, &sd).map_err(err)?)?;
        d.set_item("asquared", asquared_residual(&cs, &sd, spec).map_err(err)?)?;
        d.set_item("trace", traces.trace)?;
        d.set_item("trace_squared", traces.trace_squared)?;
        d.set_item("hopf_defect", hopf_data(&cs, &sd).defect)?;
        d.set_item("weingarten", tube::weingarten_residual(&self.inner))?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!(
            "Profile(n={}, r={:?}, alpha={}, mu={}, rho={})",
            self.inner.n, self.inner.r, self.inner.alpha, self.inner.mu, self.inner.rho
        )
    }
}

/// `(f(r), f'(r))` for `f'' + kappa f = 0`.
#[pyfunction]
fn jacobi_solution(kappa: f64, f0: f64, f0p: f64, r: f64) -> (f64, f64) {
    tube::jacobi_solution(kappa, f0, f0p, r)
}

/// RK4 reference solution of the same equation.
#[pyfunction]
#[pyo3(signature = (kappa, f0, f0p, r, step = 1e-4))]
fn jacobi_ode_oracle(kappa: f64, f0: f64, f0p: f64, r: f64, step: f64) -> PyResult<(f64, f64)> {
    tube::jacobi_ode_oracle(kappa, f0, f0p, r, step).map_err(err)
}

/// Zeros in `(0, r_max]` of the Jacobi fields with data `[(kappa, s0), ...]`.
#[pyfunction]
fn focal_distances(data: Vec<(f64, f64)>, r_max: f64) -> PyResult<Vec<f64>> {
    tube::focal_distances(&data, r_max).map_err(err)
}

/// `(label, t)` for a unit vector of the quadric model space.
#[pyfunction]
#[pyo3(signature = (n, normal, tol_t = DEFAULT_TOL_T))]
fn classify_normal(n: usize, normal: Vec<f64>, tol_t: f64) -> PyResult<(String, f64)> {
    let spec = AmbientSpec::quadric(n, QuadricSign::Compact).map_err(err)?;
    let normal = vector(normal);
    if normal.len() != spec.dim() {
        return Err(PyValueError::new_err(format!("normal must have length {}", spec.dim())));
    }
    let t = adapted_decomposition(spec.frame(), &normal).map_err(err)?.t;
    let label = match classify(spec.frame(), &normal, tol_t).map_err(err)? {
        SingularType::APrincipal => "a-principal",
        SingularType::AIsotropic => "a-isotropic",
        SingularType::Generic(_) => "generic",
    };
    Ok((label.to_string(), t))
}

/// Component of `R_N(JN)` orthogonal to `JN`.
#[pyfunction]
#[pyo3(signature = (n, normal, epsilon = 1))]
fn jn_eigen_defect(n: usize, normal: Vec<f64>, epsilon: i32) -> PyResult<f64> {
    let sign = QuadricSign::try_from(epsilon).map_err(err)?;
    let spec = AmbientSpec::quadric(n, sign).map_err(err)?;
    if normal.len() != spec.dim() {
        return Err(PyValueError::new_err(format!("normal must have length {}", spec.dim())));
    }
    jn_defect(&spec, &vector(normal)).map_err(err)
}

/// Finite-difference checks on a patch of `S^{2n-1}(r)`.
#[pyfunction]
#[pyo3(signature = (n = 3, r = 2.0, h = 1e-3))]
fn sphere_check<'py>(py: Python<'py>, n: usize, r: f64, h: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = immersion::sphere_check(n, r, h).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("samples", c.samples)?;
    d.set_item("xi_residual", c.xi_residual)?;
    d.set_item("contact_defect", c.contact_defect)?;
    d.set_item("shape_residual", c.shape_residual)?;
    d.set_item("rho_mean", c.rho_mean)?;
    d.set_item("rho_variation", c.rho_variation)?;
    d.set_item("dtrace_contact", c.dtrace_contact)?;
    d.set_item("deta_relative", c.deta_relative)?;
    d.set_item("domega", c.domega)?;
    d.set_item("domega_relative", c.domega_relative)?;
    d.set_item("pairing", c.pairing)?;
    d.set_item("dim2_contact", c.dim2_contact)?;
    Ok(d)
}

/// Finite-difference checks on the tube of radius `r` around `w = z²/2`.
#[pyfunction]
#[pyo3(signature = (r = 0.5, h = 1e-3))]
fn c2_tube_check<'py>(py: Python<'py>, r: f64, h: f64) -> PyResult<Bound<'py, PyDict>> {
    let c = immersion::c2_tube_check(HolomorphicGraph::half_square(), r, h).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("samples", c.samples)?;
    d.set_item("center_curvatures", c.center_curvatures)?;
    d.set_item("curvature_residual", c.curvature_residual)?;
    d.set_item("contact_defect", c.contact_defect)?;
    d.set_item("alpha_residual", c.alpha_residual)?;
    d.set_item("rho_min", c.rho_min)?;
    d.set_item("rho_max", c.rho_max)?;
    d.set_item("dim2_contact", c.dim2_contact)?;
    Ok(d)
}

fn report_dict<'py>(py: Python<'py>, r: &CheckReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("check_name", &r.check_name)?;
    let params = PyDict::new(py);
    for (k, v) in &r.params {
        match v {
            ParamValue::Int(i) => params.set_item(k, *i)?,
            ParamValue::Float(x) => params.set_item(k, *x)?,
            ParamValue::Text(s) => params.set_item(k, s)?,
        }
    }
    d.set_item("params", params)?;
    d.set_item("residuals", r.residuals.clone())?;
    d.set_item("tolerance", r.tolerance)?;
    d.set_item("pass", r.pass)?;
    d.set_item("runtime_ms", r.runtime_ms)?;
    Ok(d)
}

/// Runs a named suite; returns the reports as dicts in canonical order.
#[pyfunction]
#[pyo3(signature = (name, n = None, r = None, case = None, h = None, grid = None, seed = 0, tol = None))]
#[allow(clippy::too_many_arguments)]
fn run_suite<'py>(
    py: Python<'py>,
    name: &str,
    n: Option<usize>,
    r: Option<f64>,
    case: Option<u8>,
    h: Option<f64>,
    grid: Option<usize>,
    seed: u64,
    tol: Option<f64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let params = SuiteParams {
        n,
        r,
        case,
        h,
        grid,
        seed,
        tol,
    };
    let reports = suites::run_suite(name, &params).map_err(|e| PyValueError::new_err(e.to_string()))?;
    reports.iter().map(|rep| report_dict(py, rep)).collect()
}

#[pymodule]
#[pyo3(name = "kahler_contact")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAmbient>()?;
    m.add_class::<PyProfile>()?;
    m.add_function(wrap_pyfunction!(jacobi_solution, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_ode_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(focal_distances, m)?)?;
    m.add_function(wrap_pyfunction!(classify_normal, m)?)?;
    m.add_function(wrap_pyfunction!(jn_eigen_defect, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_check, m)?)?;
    m.add_function(wrap_pyfunction!(c2_tube_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("COMPACT_FOCAL_RADIUS", tube::COMPACT_FOCAL_RADIUS)?;
    Ok(())
}
