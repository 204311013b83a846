//! Python module `seifert_delta`. Rationals cross the boundary as strings such as
//! `"-1/4"`, which `fractions.Fraction` parses directly.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use seifert_core::invariants::{self, SignPolicy};
use seifert_core::spinc::{self, HolonomyClass};
use seifert_core::{arith, lens, prism, seifert, verify, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn policy(name: &str) -> PyResult<&'static dyn SignPolicy> {
    match name {
        "unresolved" => Ok(&invariants::Unresolved),
        "plus-first" => Ok(&invariants::PlusFirst),
        "rp2a" => Ok(&prism::Rp2aPolicy),
        other => Err(PyValueError::new_err(format!(
            "unknown policy {other:?}; expected unresolved, plus-first or rp2a"
        ))),
    }
}

#[pyfunction]
fn dedekind_sum(b: i64, a: i64) -> PyResult<String> {
    arith::dedekind_sum(b, a).map(|x| x.to_string()).map_err(py_err)
}

#[pyfunction]
fn lambda_sum(b: i64, a: i64, n: i64) -> PyResult<String> {
    arith::lambda_sum(b, a, n).map(|x| x.to_string()).map_err(py_err)
}

/// δ(L(a,b), s_u); `u` is reduced mod `a`.
#[pyfunction]
fn lens_delta(a: i64, b: i64, u: i64) -> PyResult<String> {
    lens::lens_delta_raw(a, b, u).map(|x| x.to_string()).map_err(py_err)
}

/// Seifert data `S(b; (a_1, b_1), ...)` over RP^2.
#[pyclass(name = "SeifertData", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeifertData {
    inner: seifert::SeifertData,
}

#[pymethods]
impl PySeifertData {
    #[new]
    #[pyo3(signature = (b, arms = Vec::new()))]
    fn new(b: i64, arms: Vec<(i64, i64)>) -> PyResult<Self> {
        seifert::SeifertData::new(b, &arms).map(|inner| PySeifertData { inner }).map_err(py_err)
    }

    /// Accepts `"b;(a,b),..."` or a JSON object.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| PySeifertData { inner }).map_err(py_err)
    }

    #[getter]
    fn b(&self) -> i64 {
        self.inner.b
    }

    #[getter]
    fn arms(&self) -> Vec<(i64, i64)> {
        self.inner.arms.iter().map(|arm| (arm.a, arm.b)).collect()
    }

    fn normalize(&self) -> Self {
        PySeifertData { inner: self.inner.normalize() }
    }

    fn l(&self) -> String {
        seifert::degree_l(&self.inner).to_string()
    }

    fn chi(&self) -> String {
        seifert::euler_char(&self.inner).to_string()
    }

    fn h1_order(&self) -> String {
        seifert::h1_order(&self.inner).to_string()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SeifertData('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A spin^c structure `(E_0, tau, m)` on a fixed Seifert space.
#[pyclass(name = "SpinC", frozen)]
struct PySpinC {
    inner: spinc::SpinCStructure,
    space: seifert::SeifertData,
}

#[pymethods]
impl PySpinC {
    #[getter]
    fn m(&self) -> i64 {
        self.inner.m
    }

    #[getter]
    fn tau(&self) -> &'static str {
        self.inner.tau.symbol()
    }

    #[getter]
    fn e(&self) -> String {
        self.inner.cls.e().to_string()
    }

    #[getter]
    fn gammas(&self) -> Vec<i64> {
        self.inner.cls.gammas()
    }

    #[getter]
    fn deltas(&self) -> Vec<i64> {
        self.inner.cls.deltas()
    }

    #[getter]
    fn trivial_holonomy(&self) -> bool {
        spinc::holonomy(&self.inner) == HolonomyClass::Trivial
    }

    /// The δ-invariant as a list of candidates: one entry when exact, two when the
    /// pin^c sign is left open by the policy.
    #[pyo3(signature = (policy = "unresolved"))]
    fn delta(&self, policy: &str) -> PyResult<Vec<String>> {
        let v = invariants::delta(&self.inner, &self.space, self::policy(policy)?).map_err(py_err)?;
        Ok(v.candidates().iter().map(ToString::to_string).collect())
    }

    fn __repr__(&self) -> String {
        format!("SpinC({})", self.inner)
    }
}

/// Every spin^c structure of `s` in canonical order.
#[pyfunction]
fn spinc_structures(s: &PySeifertData) -> Vec<PySpinC> {
    spinc::enumerate_spinc(&s.inner)
        .map(|inner| PySpinC { inner, space: s.inner.clone() })
        .collect()
}

/// Sorted `(value, multiplicity)` pairs of all δ-invariants.
#[pyfunction]
fn delta_multiset(s: &PySeifertData) -> Vec<(String, usize)> {
    invariants::delta_multiset(&s.inner).into_iter().map(|(v, k)| (v.to_string(), k)).collect()
}

/// Floating group sum η_dir for the character `(nu, u)` of the metacyclic group `(m, r)`.
#[pyfunction]
fn prism_eta_dir(m: i64, r: i64, nu: i64, u: i64) -> PyResult<f64> {
    let p = prism::MetacyclicParams::new(m, r).map_err(py_err)?;
    let c = prism::Character::new(nu, u, &p).map_err(py_err)?;
    prism::metacyclic_eta_dir(&p, &c).map_err(py_err)
}

/// Closed-form δ difference between the character `(nu, u)` and its partner.
#[pyfunction]
fn prism_delta_difference(m: i64, r: i64, nu: i64, u: i64) -> PyResult<String> {
    let p = prism::MetacyclicParams::new(m, r).map_err(py_err)?;
    let c = prism::Character::new(nu, u, &p).map_err(py_err)?;
    Ok(prism::eta_diff_closed(m, &c).to_string())
}

/// `(suite, passed, failed, counterexample)`.
type SuiteRow = (String, usize, usize, Option<String>);

/// Runs a verification suite, one row per suite.
#[pyfunction]
fn run_suite(py: Python<'_>, name: &str, bound: i64) -> PyResult<Vec<SuiteRow>> {
    let reports = py.detach(|| verify::run_suite(name, bound)).map_err(py_err)?;
    Ok(reports.into_iter().map(|r| (r.suite, r.passed, r.failed, r.counterexample)).collect())
}

#[pymodule]
fn seifert_delta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeifertData>()?;
    m.add_class::<PySpinC>()?;
    m.add_function(wrap_pyfunction!(dedekind_sum, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_sum, m)?)?;
    m.add_function(wrap_pyfunction!(lens_delta, m)?)?;
    m.add_function(wrap_pyfunction!(spinc_structures, m)?)?;
    m.add_function(wrap_pyfunction!(delta_multiset, m)?)?;
    m.add_function(wrap_pyfunction!(prism_eta_dir, m)?)?;
    m.add_function(wrap_pyfunction!(prism_delta_difference, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
