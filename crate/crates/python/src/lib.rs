//! Python bindings. Scalars cross the boundary as `fractions.Fraction` (any
//! value whose `str()` is an integer or `p/q` is accepted), so nothing is
//! ever rounded.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use nonassoc::fixtures::{
    list_fixtures as catalog, verify_fixture as verify_named, verify_fixture_dir, Report,
};
use nonassoc::io::{algebra_from_json, algebra_to_json};
use nonassoc::{
    check_identity, check_identity_random, check_operator_property, derive, find_special,
    induce_subalgebra, left_multiplication_operator, solve_linear, verify_element, Construction,
    Element, IdentityName, LinearConstraint, LinearOperator, Matrix, OperatorProperty,
    QuadraticConstraint, Scalar, Strategy, Witness, WitnessPoint,
};

fn err(e: nonassoc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    let text = obj.str()?.to_string();
    text.trim().parse().map_err(err)
}

fn to_element(values: &Bound<'_, PyAny>) -> PyResult<Element> {
    let coords = values
        .try_iter()?
        .map(|v| to_scalar(&v?))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(Element::new(coords))
}

fn fraction<'py>(py: Python<'py>, s: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((s.to_string(),))
}

fn element_list<'py>(py: Python<'py>, x: &Element) -> PyResult<Bound<'py, PyList>> {
    let items = x
        .coords()
        .iter()
        .map(|c| fraction(py, c))
        .collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, items)
}

/// Outcome of an exact check. Truthy when it passed.
#[pyclass(name = "Verdict", frozen)]
struct PyVerdict {
    inner: nonassoc::Verdict,
}

#[pymethods]
impl PyVerdict {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    /// `None`, or a dict with `at` (`(kind, values)`), `lhs` and `rhs`.
    #[getter]
    fn witness<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Some(Witness { at, lhs, rhs }) = self.inner.witness() else {
            return Ok(None);
        };
        let d = PyDict::new(py);
        let at = match at {
            WitnessPoint::Basis(ix) => ("basis", PyList::new(py, ix)?.into_any()),
            WitnessPoint::Elements(xs) => {
                let xs = xs
                    .iter()
                    .map(|x| element_list(py, x))
                    .collect::<PyResult<Vec<_>>>()?;
                ("elements", PyList::new(py, xs)?.into_any())
            }
            WitnessPoint::Parameters(ps) => {
                let ps = ps
                    .iter()
                    .map(|p| fraction(py, p))
                    .collect::<PyResult<Vec<_>>>()?;
                ("parameters", PyList::new(py, ps)?.into_any())
            }
        };
        d.set_item("at", at)?;
        d.set_item("lhs", element_list(py, lhs)?)?;
        d.set_item("rhs", element_list(py, rhs)?)?;
        Ok(Some(d))
    }

    fn __bool__(&self) -> bool {
        self.inner.passed()
    }

    fn __repr__(&self) -> String {
        format!("Verdict({})", self.inner)
    }
}

fn verdict(v: nonassoc::Verdict) -> PyVerdict {
    PyVerdict { inner: v }
}

/// A finite-dimensional algebra given by structure constants.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    inner: nonassoc::Algebra,
}

#[pymethods]
impl PyAlgebra {
    /// `entries` is an iterable of `(i, j, k, c)` meaning `e_i e_j` has `c` at `e_k`.
    #[new]
    fn new(dim: usize, entries: &Bound<'_, PyAny>) -> PyResult<Self> {
        let mut triples = Vec::new();
        for item in entries.try_iter()? {
            let (i, j, k, c): (usize, usize, usize, Bound<'_, PyAny>) = item?.extract()?;
            triples.push((i, j, k, to_scalar(&c)?));
        }
        let inner = nonassoc::Algebra::new(dim, triples).map_err(err)?;
        Ok(PyAlgebra { inner })
    }

    /// Full `n×n` matrices, basis `E11, E12, ..` row by row.
    #[staticmethod]
    fn matrix(n: usize) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: nonassoc::Algebra::matrix_algebra(n).map_err(err)?,
        })
    }

    #[staticmethod]
    fn null(dim: usize) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: nonassoc::Algebra::null(dim).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: algebra_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        algebra_to_json(&self.inner)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn mul<'py>(
        &self,
        py: Python<'py>,
        x: &Bound<'py, PyAny>,
        y: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyList>> {
        let z = self
            .inner
            .multiply(&to_element(x)?, &to_element(y)?)
            .map_err(err)?;
        element_list(py, &z)
    }

    fn is_associative(&self) -> PyVerdict {
        verdict(self.inner.is_associative())
    }

    fn is_commutative(&self) -> PyVerdict {
        verdict(self.inner.is_commutative())
    }

    fn unit<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyList>>> {
        self.inner.unit().map(|u| element_list(py, &u)).transpose()
    }

    /// Exact check, or `trials` random evaluations when given.
    #[pyo3(signature = (identity, trials=None, seed=0))]
    fn check(
        &self,
        py: Python<'_>,
        identity: &str,
        trials: Option<usize>,
        seed: u64,
    ) -> PyResult<PyVerdict> {
        let id: IdentityName = identity.parse().map_err(err)?;
        let a = &self.inner;
        let v = py.detach(|| match trials {
            Some(t) => check_identity_random(a, id, t, seed),
            None => check_identity(a, id),
        });
        Ok(verdict(v))
    }

    /// Derived algebra, e.g. `derive("lie_endo", op)` or `derive("novikov_affine(a=1/2)", d)`.
    #[pyo3(signature = (construction, operator=None))]
    fn derive(
        &self,
        construction: &str,
        operator: Option<PyRef<'_, PyOperator>>,
    ) -> PyResult<PyAlgebra> {
        let c: Construction = construction.parse().map_err(err)?;
        let r = operator.as_ref().map(|o| &o.inner);
        Ok(PyAlgebra {
            inner: derive(&self.inner, r, &c).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(dim={}, nonzero={})",
            self.inner.dim(),
            self.inner.entries().len()
        )
    }
}

/// A linear operator; column `j` is the image of `e_j`.
#[pyclass(name = "Operator", frozen)]
struct PyOperator {
    inner: LinearOperator,
}

#[pymethods]
impl PyOperator {
    /// `rows` is the matrix row by row.
    #[new]
    fn new(rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        let rows = rows
            .try_iter()?
            .map(|r| to_element(&r?).map(Element::into_coords))
            .collect::<PyResult<Vec<_>>>()?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(PyValueError::new_err("operator matrix must be square"));
        }
        let inner = LinearOperator::with_dim(dim, Matrix::from_rows(rows)).map_err(err)?;
        Ok(PyOperator { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let m = self.inner.matrix();
        let rows = (0..m.rows())
            .map(|i| element_list(py, &Element::new(m.row(i).to_vec())))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, rows)
    }

    fn apply<'py>(&self, py: Python<'py>, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyList>> {
        let x = to_element(x)?;
        if x.dim() != self.inner.dim() {
            return Err(PyValueError::new_err(
                "element dimension does not match the operator",
            ));
        }
        element_list(py, &self.inner.apply(&x))
    }

    /// Check a property such as `endomorphism` or `rota_baxter(1)` on `algebra`.
    fn check(&self, algebra: PyRef<'_, PyAlgebra>, property: &str) -> PyResult<PyVerdict> {
        let p: OperatorProperty = property.parse().map_err(err)?;
        check_operator_property(&algebra.inner, &self.inner, &p)
            .map(verdict)
            .map_err(err)
    }
}

/// A subalgebra of an ambient algebra, given by a spanning basis.
#[pyclass(name = "Embedding", frozen)]
struct PyEmbedding {
    algebra: nonassoc::Algebra,
    inner: nonassoc::Embedding,
}

fn linear(names: Vec<String>) -> PyResult<Vec<LinearConstraint>> {
    names
        .iter()
        .map(|n| n.parse::<LinearConstraint>().map_err(err))
        .collect()
}

#[pymethods]
impl PyEmbedding {
    /// Fails unless the basis is independent and closed under the product.
    #[new]
    fn new(ambient: PyRef<'_, PyAlgebra>, basis: &Bound<'_, PyAny>) -> PyResult<Self> {
        let basis = basis
            .try_iter()?
            .map(|b| to_element(&b?))
            .collect::<PyResult<Vec<_>>>()?;
        let (algebra, inner) = induce_subalgebra(&ambient.inner, basis).map_err(err)?;
        Ok(PyEmbedding { algebra, inner })
    }

    /// The subalgebra in its own basis.
    fn subalgebra(&self) -> PyAlgebra {
        PyAlgebra {
            inner: self.algebra.clone(),
        }
    }

    fn left_multiplication(&self, u: &Bound<'_, PyAny>) -> PyResult<PyOperator> {
        let inner = left_multiplication_operator(&self.inner, &to_element(u)?).map_err(err)?;
        Ok(PyOperator { inner })
    }

    /// `(offset, directions)` of all solutions, or `None` when there are none.
    #[allow(clippy::type_complexity)]
    fn solve_linear<'py>(
        &self,
        py: Python<'py>,
        constraints: Vec<String>,
    ) -> PyResult<Option<(Bound<'py, PyList>, Vec<Bound<'py, PyList>>)>> {
        let space = solve_linear(&self.inner, &linear(constraints)?);
        let Some(offset) = &space.offset else {
            return Ok(None);
        };
        let dirs = space
            .directions
            .iter()
            .map(|d| element_list(py, d))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Some((element_list(py, offset)?, dirs)))
    }

    /// Rational solutions at the given points of the affine solution space.
    fn find_special<'py>(
        &self,
        py: Python<'py>,
        linear_constraints: Vec<String>,
        quadratic: &str,
        grid: &Bound<'py, PyAny>,
    ) -> PyResult<Vec<Bound<'py, PyList>>> {
        let quad: QuadraticConstraint = quadratic.parse().map_err(err)?;
        let points = grid
            .try_iter()?
            .map(|p| to_element(&p?).map(Element::into_coords))
            .collect::<PyResult<Vec<_>>>()?;
        let found = find_special(
            &self.inner,
            &linear(linear_constraints)?,
            &quad,
            &Strategy::Grid(points),
        )
        .map_err(err)?;
        found.elements.iter().map(|u| element_list(py, u)).collect()
    }

    /// Each constraint checked separately: a list of `(name, Verdict)`.
    #[pyo3(signature = (u, linear_constraints, quadratic=None))]
    fn verify_element(
        &self,
        u: &Bound<'_, PyAny>,
        linear_constraints: Vec<String>,
        quadratic: Option<&str>,
    ) -> PyResult<Vec<(String, PyVerdict)>> {
        let quad = quadratic
            .map(|q| q.parse::<QuadraticConstraint>())
            .transpose()
            .map_err(err)?;
        let report = verify_element(
            &self.inner,
            &to_element(u)?,
            &linear(linear_constraints)?,
            quad.as_ref(),
        )
        .map_err(err)?;
        Ok(report
            .items
            .into_iter()
            .map(|(name, v)| (name, verdict(v)))
            .collect())
    }
}

/// Per-row outcome of a fixture check.
#[pyclass(name = "FixtureReport", frozen)]
struct PyReport {
    inner: Report,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.pass
    }

    #[getter]
    fn fixture(&self) -> String {
        self.inner.fixture.clone()
    }

    /// `(check, expected, actual, ok)` per row.
    #[getter]
    fn rows(&self) -> Vec<(String, String, String, bool)> {
        self.inner
            .rows
            .iter()
            .map(|r| (r.check.clone(), r.expected.clone(), r.actual.clone(), r.ok))
            .collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn list_fixtures() -> Vec<&'static str> {
    catalog()
}

/// Verify a built-in fixture by name, or a fixture directory.
#[pyfunction]
fn verify_fixture(py: Python<'_>, target: &str) -> PyResult<PyReport> {
    let path = std::path::Path::new(target);
    let report = py.detach(|| {
        if path.is_dir() {
            verify_fixture_dir(path)
        } else {
            verify_named(target)
        }
    });
    Ok(PyReport {
        inner: report.map_err(err)?,
    })
}

#[pymodule]
fn nonassoc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyEmbedding>()?;
    m.add_class::<PyVerdict>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(list_fixtures, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fixture, m)?)?;
    Ok(())
}
