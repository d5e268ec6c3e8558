//! Python bindings. Rationals cross the boundary as `"num/den"` strings and
//! reports as plain dicts.

use ::newton_forge as nf;
use nf::oracle::{self, DEFAULT_BUDGET};
use nf::ProblemInstance;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(newton_forge, BudgetExceeded, PyRuntimeError, "Torus enumeration over budget.");
create_exception!(newton_forge, VerificationMismatch, PyRuntimeError, "Empirical Newton polygon differs from the predicted one.");

fn err(e: nf::Error) -> PyErr {
    match e {
        nf::Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// `(u, r, weight)` for one domain point.
type PointTuple = (Vec<i64>, Vec<String>, String);

fn vertices(poly: &nf::LowerPolygon) -> Vec<(String, String)> {
    poly.vertices().iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()
}

/// Square integer matrix whose columns are the exponent vectors.
#[pyclass(name = "ExponentMatrix", module = "newton_forge", frozen, from_py_object)]
#[derive(Clone)]
struct PyExponentMatrix {
    inner: nf::ExponentMatrix,
}

#[pymethods]
impl PyExponentMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        nf::ExponentMatrix::from_rows(rows).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<i64>> {
        self.inner.rows().to_vec()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn det(&self) -> String {
        self.inner.det().to_string()
    }

    /// Least common denominator of the weight functional.
    #[getter]
    fn m(&self) -> u64 {
        self.inner.denominator_m()
    }

    fn columns(&self) -> Vec<Vec<i64>> {
        self.inner.columns()
    }

    fn coords(&self, u: Vec<i64>) -> PyResult<Vec<String>> {
        self.inner.coords(&u).map(|r| r.to_strings()).map_err(err)
    }

    fn weight(&self, u: Vec<i64>) -> PyResult<String> {
        self.inner.weight(&u).map(|w| w.to_string()).map_err(err)
    }

    /// Representative of `u` modulo the column lattice inside the domain.
    fn reduce(&self, u: Vec<i64>) -> PyResult<Vec<i64>> {
        self.inner.reduce(&u).map(|pt| pt.u).map_err(err)
    }

    /// `[(u, r, weight), ...]` in lexicographic order of `u`.
    fn fundamental_domain(&self) -> PyResult<Vec<PointTuple>> {
        let domain = self.inner.fundamental_domain().map_err(err)?;
        Ok(domain
            .iter()
            .map(|pt| (pt.u.clone(), pt.r.to_strings(), pt.weight.to_string()))
            .collect())
    }

    /// Nonzero Hodge numbers as `{k: H(k)}`.
    fn hodge_numbers(&self) -> PyResult<std::collections::BTreeMap<usize, u64>> {
        let h = nf::hodge_numbers(&self.inner).map_err(err)?;
        Ok(h.nonzero().into_iter().collect())
    }

    fn hodge_polygon(&self) -> PyResult<Vec<(String, String)>> {
        nf::hodge_polygon(&self.inner).map(|hp| vertices(&hp)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("ExponentMatrix({:?})", self.inner.rows())
    }
}

/// An exponent matrix together with a prime not dividing its determinant.
#[pyclass(name = "PrimeContext", module = "newton_forge", frozen)]
struct PyPrimeContext {
    inner: nf::PrimeContext,
}

#[pymethods]
impl PyPrimeContext {
    #[new]
    fn new(matrix: PyExponentMatrix, p: u64) -> PyResult<Self> {
        nf::PrimeContext::new(matrix.inner, p).map(|inner| Self { inner }).map_err(err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn matrix(&self) -> PyExponentMatrix {
        PyExponentMatrix {
            inner: self.inner.matrix().clone(),
        }
    }

    /// Image of a domain point `u` under the p-action.
    fn p_act(&self, u: Vec<i64>) -> PyResult<Vec<i64>> {
        let pt = self
            .inner
            .domain()
            .iter()
            .find(|pt| pt.u == u)
            .ok_or_else(|| err(nf::Error::NotInDomain(u.clone())))?;
        self.inner.p_act(pt).map(|img| img.u).map_err(err)
    }

    /// Image index of each domain point under the p-action.
    fn permutation(&self) -> Vec<usize> {
        self.inner.permutation()
    }

    /// `[(points, slope_sum), ...]`, each orbit starting at its least point.
    fn orbits(&self) -> Vec<(Vec<Vec<i64>>, String)> {
        self.inner
            .orbits()
            .iter()
            .map(|o| (o.points.iter().map(|pt| pt.u.clone()).collect(), o.slope_sum.to_string()))
            .collect()
    }

    fn is_p_stable(&self) -> bool {
        self.inner.is_p_stable()
    }

    fn newton_polygon(&self) -> Vec<(String, String)> {
        vertices(&nf::newton_polygon_theoretical(&self.inner))
    }

    /// `S_i` in the basis `1, z, ..., z^(p-2)`.
    #[pyo3(signature = (degree, budget = None))]
    fn char_sum(&self, py: Python<'_>, degree: usize, budget: Option<u64>) -> PyResult<Vec<String>> {
        let budget = budget.map_or(DEFAULT_BUDGET, u128::from);
        let sum = py
            .detach(|| oracle::char_sum(&self.inner, degree, budget))
            .map_err(err)?;
        Ok(sum.coeffs().iter().map(ToString::to_string).collect())
    }

    /// Newton polygon read off from the exact character sums.
    #[pyo3(signature = (budget = None))]
    fn empirical_newton_polygon(&self, py: Python<'_>, budget: Option<u64>) -> PyResult<Vec<(String, String)>> {
        let budget = budget.map_or(DEFAULT_BUDGET, u128::from);
        let run = py
            .detach(|| oracle::run(&self.inner, budget, oracle::MIN_SLACK))
            .map_err(err)?;
        Ok(vertices(&run.newton_polygon))
    }

    fn __repr__(&self) -> String {
        format!("PrimeContext({:?}, p={})", self.inner.matrix().rows(), self.inner.p())
    }
}

/// Theoretical report for `f = sum x^(w_j)` over `F_p`, as a dict.
#[pyfunction]
fn analyze<'py>(py: Python<'py>, p: u64, matrix: Vec<Vec<i64>>) -> PyResult<Bound<'py, PyAny>> {
    let instance = ProblemInstance { p, matrix, budget: None };
    let analysis = nf::analyze(&instance).map_err(err)?;
    to_py(py, &analysis.report)
}

/// Report including the empirical section. Raises `BudgetExceeded` when the
/// torus is too large and `VerificationMismatch` if the polygons disagree.
#[pyfunction]
#[pyo3(signature = (p, matrix, budget = None))]
fn verify<'py>(py: Python<'py>, p: u64, matrix: Vec<Vec<i64>>, budget: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let instance = ProblemInstance { p, matrix, budget };
    let limit = budget.map_or(DEFAULT_BUDGET, u128::from);
    let v = py.detach(|| nf::verify(&instance, limit)).map_err(err)?;
    match v.matches() {
        Some(true) => to_py(py, &v.analysis.report),
        Some(false) => Err(VerificationMismatch::new_err(format!("p = {p}"))),
        None => {
            let b = v.analysis.report.budget_exceeded.expect("skipped runs carry a budget report");
            Err(BudgetExceeded::new_err(format!("torus of {} points exceeds budget {}", b.required, b.limit)))
        }
    }
}

/// `[(p, stable, max_gap), ...]` for primes in `[pmin, pmax]` coprime to det.
#[pyfunction]
fn scan(matrix: Vec<Vec<i64>>, pmin: u64, pmax: u64) -> PyResult<Vec<(u64, bool, String)>> {
    let j = nf::ExponentMatrix::from_rows(matrix).map_err(err)?;
    let rows = nf::scan(&j, pmin, pmax).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.p, r.stable, r.max_gap.0)).collect())
}

#[pymodule]
fn newton_forge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExponentMatrix>()?;
    m.add_class::<PyPrimeContext>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add("VerificationMismatch", m.py().get_type::<VerificationMismatch>())?;
    Ok(())
}
