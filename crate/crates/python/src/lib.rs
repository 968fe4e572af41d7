//! Python bindings: `import hzeta_py`.

use hzeta::continuation as cont;
use hzeta::harness::{self, Params};
use hzeta::h_series::{self, Weight};
use hzeta::quadrature;
use hzeta::special;
use num_complex::Complex64;
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyKeyError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

create_exception!(hzeta_py, DomainError, PyValueError);
create_exception!(hzeta_py, PoleError, PyZeroDivisionError);
create_exception!(hzeta_py, AccuracyError, PyArithmeticError);
create_exception!(hzeta_py, UnknownIdentityError, PyKeyError);

fn to_py(e: hzeta::Error) -> PyErr {
    let msg = e.to_string();
    match e {
        hzeta::Error::Domain { .. } => DomainError::new_err(msg),
        hzeta::Error::Pole { .. } => PoleError::new_err(msg),
        hzeta::Error::Accuracy { .. } => AccuracyError::new_err(msg),
        hzeta::Error::NotFound(_) => UnknownIdentityError::new_err(msg),
    }
}

type Res<T> = Result<T, PyErr>;

fn ok<T>(r: hzeta::Result<T>) -> Res<T> {
    r.map_err(to_py)
}

#[pyclass(name = "PrecisionContext", module = "hzeta_py", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyContext {
    inner: hzeta::PrecisionContext,
}

#[pymethods]
impl PyContext {
    #[new]
    #[pyo3(signature = (digits = 16, max_terms = 10_000_000, quad_depth = 12, tol = 1e-10))]
    fn new(digits: u32, max_terms: u64, quad_depth: u32, tol: f64) -> Res<Self> {
        let inner = hzeta::PrecisionContext { digits, max_terms, quad_depth, ..Default::default() }.with_tol(tol);
        ok(inner.validate())?;
        Ok(PyContext { inner })
    }

    /// Double-double accumulation.
    #[staticmethod]
    fn high() -> Self {
        PyContext { inner: hzeta::PrecisionContext::high() }
    }

    #[getter]
    fn digits(&self) -> u32 {
        self.inner.digits
    }

    #[getter]
    fn max_terms(&self) -> u64 {
        self.inner.max_terms
    }

    #[getter]
    fn quad_depth(&self) -> u32 {
        self.inner.quad_depth
    }

    #[getter]
    fn tol(&self) -> f64 {
        self.inner.tol_abs
    }

    fn __repr__(&self) -> String {
        let c = &self.inner;
        format!(
            "PrecisionContext(digits={}, max_terms={}, quad_depth={}, tol={:e})",
            c.digits, c.max_terms, c.quad_depth, c.tol_abs
        )
    }
}

fn ctx_of(ctx: Option<PyContext>) -> hzeta::PrecisionContext {
    ctx.map(|c| c.inner).unwrap_or_default()
}

/// zeta_h(s) on the whole plane minus the poles.
#[pyfunction]
#[pyo3(signature = (s, ctx = None))]
fn zeta_h(s: Complex64, ctx: Option<PyContext>) -> Res<Complex64> {
    ok(cont::zeta_h(s, &ctx_of(ctx)))
}

/// (value, error estimate, method) for zeta_h(s).
#[pyfunction]
#[pyo3(signature = (s, ctx = None))]
fn zeta_h_detailed(s: Complex64, ctx: Option<PyContext>) -> Res<(Complex64, f64, &'static str)> {
    let v = ok(cont::zeta_h_value(s, &ctx_of(ctx)))?;
    let method = match v.method {
        cont::Method::Series => "series",
        cont::Method::MellinSplit => "mellin_split",
        cont::Method::EulerMaclaurin => "euler_maclaurin",
    };
    Ok((v.value, v.error, method))
}

#[pyfunction]
#[pyo3(signature = (s, ctx = None))]
fn riemann_zeta(s: Complex64, ctx: Option<PyContext>) -> Res<Complex64> {
    ok(special::riemann_zeta(s, &ctx_of(ctx)))
}

#[pyfunction]
#[pyo3(signature = (s, x, ctx = None))]
fn hurwitz_zeta(s: Complex64, x: f64, ctx: Option<PyContext>) -> Res<Complex64> {
    ok(special::hurwitz_zeta(s, x, &ctx_of(ctx)))
}

#[pyfunction]
#[pyo3(signature = (s, ctx = None))]
fn gamma(s: Complex64, ctx: Option<PyContext>) -> Res<Complex64> {
    ok(special::gamma(s, &ctx_of(ctx)))
}

#[pyfunction]
#[pyo3(signature = (s, ctx = None))]
fn digamma(s: Complex64, ctx: Option<PyContext>) -> Res<Complex64> {
    ok(special::digamma(s, &ctx_of(ctx)))
}

/// int_0^{r pi} log(tan x) dx for 0 <= r <= 1/2.
#[pyfunction]
#[pyo3(name = "T", signature = (r, ctx = None))]
fn bradley_t(r: f64, ctx: Option<PyContext>) -> Res<f64> {
    ok(quadrature::T(r, &ctx_of(ctx)))
}

#[pyfunction]
#[pyo3(name = "G", signature = (z, ctx = None))]
fn g_function(z: Complex64, ctx: Option<PyContext>) -> Res<Complex64> {
    ok(cont::G(z, &ctx_of(ctx)))
}

/// int_0^{pi/2} sin(4nx) log(tan x) dx.
#[pyfunction]
#[pyo3(signature = (n, ctx = None))]
fn log_tangent_sine(n: u32, ctx: Option<PyContext>) -> Res<f64> {
    if n == 0 {
        return Err(DomainError::new_err("n must be at least 1"));
    }
    let e = ok(quadrature::log_tangent_integral(&quadrature::sine_mode(n), &ctx_of(ctx)))?;
    Ok(e.value)
}

/// Exact h_n = 1 + 1/3 + ... + 1/(2n-1) as a Fraction.
#[pyfunction]
fn h(n: u64) -> Res<BigRational> {
    ok(h_series::h(n))
}

#[pyfunction]
fn harmonic(n: u64) -> Res<BigRational> {
    ok(h_series::harmonic(n))
}

#[pyfunction]
#[pyo3(signature = (y, ctx = None))]
fn w(y: f64, ctx: Option<PyContext>) -> Res<f64> {
    ok(h_series::w_function(y, &ctx_of(ctx)))
}

/// weight: "cos" (needs r), "alternating", "even_indices", "odd_indices" or "squared".
#[pyfunction]
#[pyo3(signature = (weight, s, r = None, ctx = None))]
fn weighted_h_sum(weight: &str, s: f64, r: Option<f64>, ctx: Option<PyContext>) -> Res<f64> {
    let weight = match (weight, r) {
        ("cos", Some(r)) => Weight::Cos { r },
        ("cos", None) => return Err(DomainError::new_err("the cos weight needs r")),
        ("alternating", _) => Weight::Alternating,
        ("even_indices", _) => Weight::EvenIndices,
        ("odd_indices", _) => Weight::OddIndices,
        ("squared", _) => Weight::Squared,
        (other, _) => return Err(DomainError::new_err(format!("unknown weight `{other}`"))),
    };
    Ok(ok(h_series::weighted_h_sum(weight, s, &ctx_of(ctx)))?.value)
}

#[pyclass(name = "PoleInfo", module = "hzeta_py", frozen, get_all)]
struct PyPoleInfo {
    location: f64,
    order: u32,
    leading_coefficient: f64,
    residue: f64,
    residue_exact: Option<BigRational>,
    numeric_residue: f64,
}

#[pymethods]
impl PyPoleInfo {
    fn __repr__(&self) -> String {
        format!("PoleInfo(location={}, order={}, residue={})", self.location, self.order, self.residue)
    }
}

/// Pole k = 0 is s = 1; pole k = n >= 1 is s = 1 - 2n.
#[pyfunction]
#[pyo3(signature = (k, ctx = None))]
fn pole_info(k: u32, ctx: Option<PyContext>) -> Res<PyPoleInfo> {
    let p = ok(cont::pole_info(k, &ctx_of(ctx)))?;
    Ok(PyPoleInfo {
        location: p.location.re,
        order: p.order,
        leading_coefficient: p.leading_coefficient,
        residue: p.residue,
        residue_exact: p.residue_exact,
        numeric_residue: p.numeric_residue,
    })
}

#[pyclass(name = "IdentityReport", module = "hzeta_py", frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyReport {
    id: String,
    source: String,
    params: String,
    lhs: Option<Complex64>,
    rhs: Option<Complex64>,
    abs_err: Option<f64>,
    rel_err: Option<f64>,
    tol: f64,
    status: String,
    elapsed_ms: f64,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.status == "pass"
    }

    fn __repr__(&self) -> String {
        format!("IdentityReport({} {} {})", self.id, self.params, self.status)
    }
}

impl From<&harness::IdentityReport> for PyReport {
    fn from(r: &harness::IdentityReport) -> Self {
        PyReport {
            id: r.id.clone(),
            source: r.source.clone(),
            params: r.params.clone(),
            lhs: r.lhs_value,
            rhs: r.rhs_value,
            abs_err: r.abs_err,
            rel_err: r.rel_err,
            tol: r.tol,
            status: r.status.to_string(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

/// One identity at parameters written like "n=3" or "P=B_5".
#[pyfunction]
#[pyo3(signature = (id, params = "", ctx = None))]
fn run_identity(id: &str, params: &str, ctx: Option<PyContext>) -> Res<PyReport> {
    let params = ok(Params::parse(params))?;
    let r = ok(harness::run_identity(id, &params, &ctx_of(ctx)))?;
    Ok(PyReport::from(&r))
}

/// (reports, JSON text) for every grid point of the identities matching `filter`.
#[pyfunction]
#[pyo3(signature = (filter = "*", jobs = None, ctx = None))]
fn run_suite(py: Python<'_>, filter: &str, jobs: Option<usize>, ctx: Option<PyContext>) -> Res<(Vec<PyReport>, String)> {
    let ctx = ctx_of(ctx);
    let suite = py.detach(|| harness::run_suite(filter, &ctx, jobs));
    let suite = ok(suite)?;
    let json = ok(harness::suite_to_json(&suite))?;
    Ok((suite.reports.iter().map(PyReport::from).collect(), json))
}

/// (id, identity, parameter domain) for every registered family.
#[pyfunction]
fn list_identities() -> Vec<(&'static str, &'static str, &'static str)> {
    harness::catalog().iter().map(|s| (s.id, s.source, s.parameter_domain)).collect()
}

#[pymodule]
fn hzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyContext>()?;
    m.add_class::<PyPoleInfo>()?;
    m.add_class::<PyReport>()?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("PoleError", py.get_type::<PoleError>())?;
    m.add("AccuracyError", py.get_type::<AccuracyError>())?;
    m.add("UnknownIdentityError", py.get_type::<UnknownIdentityError>())?;
    m.add_function(wrap_pyfunction!(zeta_h, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_h_detailed, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(digamma, m)?)?;
    m.add_function(wrap_pyfunction!(bradley_t, m)?)?;
    m.add_function(wrap_pyfunction!(g_function, m)?)?;
    m.add_function(wrap_pyfunction!(log_tangent_sine, m)?)?;
    m.add_function(wrap_pyfunction!(h, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic, m)?)?;
    m.add_function(wrap_pyfunction!(w, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_h_sum, m)?)?;
    m.add_function(wrap_pyfunction!(pole_info, m)?)?;
    m.add_function(wrap_pyfunction!(run_identity, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(list_identities, m)?)?;
    Ok(())
}
