//! Python bindings. The `*_json` helpers are plain Rust so they can be
//! tested without an interpreter; the `#[pyfunction]` wrappers only convert.

use engine::bounds::{BoundMethod, BoundReport};
use engine::chow::{segre_closed_form as closed_form, ModelParams, SegreTable};
use engine::jet::morse_certificate as certificate;
use engine::schur::positivity_report;
use engine::vecfields::{verify_family, Family};
use engine::{Error, MultidegreePoly};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invariant(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> engine::Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Invariant(e.to_string()))
}

pub fn segre_json(ambient: usize, n: usize, twist: i64) -> engine::Result<String> {
    to_json(&SegreTable::compute(ModelParams::new(ambient, n)?, twist))
}

pub fn positivity_json(ambient: usize, n: usize, a: i64) -> engine::Result<String> {
    to_json(&positivity_report(ModelParams::new(ambient, n)?, a)?)
}

pub fn bound_json(ambient: usize, n: usize, a: i64, method: &str) -> engine::Result<String> {
    let method: BoundMethod = method.parse()?;
    to_json(&BoundReport::compute(ambient, n, a, method)?)
}

pub fn vecfields_json(ambient: usize, degrees: &[u32], family: &str, samples: usize, seed: u64) -> engine::Result<String> {
    to_json(&verify_family(ambient, degrees, family.parse::<Family>()?, samples, seed)?)
}

/// Exact polynomial in the multidegree variables `d1..dc`.
#[pyclass(name = "Poly", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPoly {
    inner: MultidegreePoly,
}

#[pymethods]
impl PyPoly {
    #[getter]
    fn num_vars(&self) -> usize {
        self.inner.num_vars()
    }

    /// Total degree; -1 for the zero polynomial.
    fn total_degree(&self) -> i64 {
        self.inner.total_degree().finite().map_or(-1, i64::from)
    }

    fn dominant_part(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.dominant_part(),
        }
    }

    /// `[(j, coeff)]` with the polynomial equal to `sum coeff * eps_j`.
    fn elementary_form(&self) -> PyResult<Vec<(usize, BigInt)>> {
        self.inner.express_in_elementary().map_err(to_py)
    }

    /// `[(exponents, coeff)]` in graded-lex order.
    fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.inner
            .terms()
            .map(|(m, c)| (m.exps().to_vec(), c.clone()))
            .collect()
    }

    fn eval(&self, point: Vec<BigInt>) -> PyResult<BigInt> {
        self.inner.eval(&point).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({})", self.inner)
    }

    fn __eq__(&self, other: PyRef<'_, PyPoly>) -> bool {
        self.inner == other.inner
    }
}

/// Coefficients of `h^j` in `s_j(Omega_X(m))` for `j = 0..n`.
#[pyfunction]
#[pyo3(signature = (ambient, n, twist=0))]
fn segre_cotangent(ambient: usize, n: usize, twist: i64) -> PyResult<Vec<PyPoly>> {
    let p = ModelParams::new(ambient, n).map_err(to_py)?;
    Ok(SegreTable::compute(p, twist)
        .classes
        .into_iter()
        .map(|(_, inner)| PyPoly { inner })
        .collect())
}

#[pyfunction]
fn segre_closed_form(ambient: usize, n: usize, j: usize) -> PyResult<PyPoly> {
    let p = ModelParams::new(ambient, n).map_err(to_py)?;
    Ok(PyPoly {
        inner: closed_form(p, j).map_err(to_py)?,
    })
}

/// Morse difference divided by `deg X`, with its value at `degrees` if given.
#[pyfunction]
#[pyo3(signature = (ambient, n, a, degrees=None))]
fn morse_certificate(ambient: usize, n: usize, a: i64, degrees: Option<Vec<i64>>) -> PyResult<(PyPoly, Option<BigInt>)> {
    let p = ModelParams::new(ambient, n).map_err(to_py)?;
    let cert = certificate(p, a, degrees.as_deref()).map_err(to_py)?;
    Ok((PyPoly { inner: cert.difference }, cert.value))
}

#[pyfunction]
fn segre_table_json(ambient: usize, n: usize, twist: i64) -> PyResult<String> {
    segre_json(ambient, n, twist).map_err(to_py)
}

#[pyfunction]
fn positivity_report_json(ambient: usize, n: usize, a: i64) -> PyResult<String> {
    positivity_json(ambient, n, a).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (ambient, n, a, method="rough"))]
fn bound_report_json(ambient: usize, n: usize, a: i64, method: &str) -> PyResult<String> {
    bound_json(ambient, n, a, method).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (ambient, degrees, family, samples=100, seed=0))]
fn vecfields_verify_json(ambient: usize, degrees: Vec<u32>, family: &str, samples: usize, seed: u64) -> PyResult<String> {
    vecfields_json(ambient, &degrees, family, samples, seed).map_err(to_py)
}

/// `[(id, passed, line)]` for one or all acceptance criteria.
#[pyfunction]
#[pyo3(signature = (criterion=None, seed=0))]
fn selftest(py: Python<'_>, criterion: Option<u8>, seed: u64) -> PyResult<Vec<(u8, bool, String)>> {
    let outcomes = py.detach(|| match criterion {
        Some(id) => engine::acceptance::run_criterion(id, seed).map(|o| vec![o]),
        None => Ok(engine::acceptance::run_all(seed)),
    });
    Ok(outcomes
        .map_err(to_py)?
        .into_iter()
        .map(|o| (o.id, o.passed, o.line()))
        .collect())
}

#[pymodule]
fn segrejet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_function(wrap_pyfunction!(segre_cotangent, m)?)?;
    m.add_function(wrap_pyfunction!(segre_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(morse_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(segre_table_json, m)?)?;
    m.add_function(wrap_pyfunction!(positivity_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(vecfields_verify_json, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
