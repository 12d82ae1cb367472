//! Python bindings: the main types and operations behind one extension
//! module. Exact rationals cross the boundary as `"p/q"` strings; counts as
//! integers.
//!
//! ```python
//! import octonary
//! octonary.theta(5).coefficients()      # ['1', '2', '0', '0', '2']
//! octonary.count("A:1,1,1,1,1,1", 1)    # 20
//! s = octonary.Session(64)
//! s.solve("B:1,1,2")                    # ['3/40', '-1/5', '-27/40', ...]
//! ```

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use octonary_core::bases::SpaceId;
use octonary_core::engine::Engine;
use octonary_core::generators::{self, EtaQuotientSpec};
use octonary_core::rational::format_q;
use octonary_core::repcount::{self, QuadraticForm};
use octonary_core::series::QSeries as CoreSeries;
use octonary_core::Error;

fn to_py_err(err: Error) -> PyErr {
    match err {
        Error::Parse(_) | Error::ConstraintViolation { .. } | Error::UnknownSeries(_) => {
            PyValueError::new_err(err.to_string())
        }
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn parse_form(label: &str) -> PyResult<QuadraticForm> {
    if let Some(rest) = label.strip_prefix("B:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() == 4 && parts[0].trim() == "1" {
            return QuadraticForm::parse(&format!("B:{}", parts[1..].join(","))).map_err(to_py_err);
        }
    }
    QuadraticForm::parse(label).map_err(to_py_err)
}

/// A truncated q-expansion with exact rational coefficients.
#[pyclass(name = "QSeries", from_py_object)]
#[derive(Clone)]
struct PyQSeries {
    inner: CoreSeries,
}

#[pymethods]
impl PyQSeries {
    /// Number of known coefficients.
    fn prec(&self) -> usize {
        self.inner.prec()
    }

    /// Coefficient of q^n as a reduced `"p/q"` string.
    fn coeff(&self, n: usize) -> PyResult<String> {
        if n >= self.inner.prec() {
            return Err(PyValueError::new_err(format!(
                "coefficient {n} beyond precision {}",
                self.inner.prec()
            )));
        }
        Ok(format_q(self.inner.coeff(n)))
    }

    /// All coefficients, `q^0 .. q^(prec-1)`.
    fn coefficients(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(format_q).collect()
    }

    fn add(&self, other: &PyQSeries) -> PyQSeries {
        PyQSeries {
            inner: self.inner.add(&other.inner),
        }
    }

    fn mul(&self, other: &PyQSeries) -> PyQSeries {
        PyQSeries {
            inner: self.inner.mul(&other.inner),
        }
    }

    /// The dilation f(z) -> f(dz).
    fn dilate(&self, d: usize) -> PyResult<PyQSeries> {
        if d == 0 {
            return Err(PyValueError::new_err("dilation must be positive"));
        }
        Ok(PyQSeries {
            inner: self.inner.dilate(d),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.prec()
    }

    fn __repr__(&self) -> String {
        format!("QSeries({})", self.inner)
    }
}

/// Theta(z) = sum q^(n^2).
#[pyfunction]
fn theta(prec: usize) -> PyResult<PyQSeries> {
    if prec == 0 {
        return Err(PyValueError::new_err("prec must be positive"));
    }
    Ok(PyQSeries {
        inner: generators::theta_series(prec),
    })
}

/// The hexagonal-lattice theta function sum q^(x^2+xy+y^2).
#[pyfunction]
fn borwein(prec: usize) -> PyResult<PyQSeries> {
    if prec == 0 {
        return Err(PyValueError::new_err("prec must be positive"));
    }
    Ok(PyQSeries {
        inner: generators::borwein_f(prec),
    })
}

/// Expand an eta quotient given as `"1^2 2^2 3^2 6^2"`.
#[pyfunction]
fn eta_quotient(spec: &str, prec: usize) -> PyResult<PyQSeries> {
    let spec = EtaQuotientSpec::parse(spec).map_err(to_py_err)?;
    let inner = generators::eta_quotient(&spec, prec).map_err(to_py_err)?;
    Ok(PyQSeries { inner })
}

/// Expand a named series from the catalog (theta, F, E4, f4_6, ...).
#[pyfunction]
fn expand(name: &str, prec: usize) -> PyResult<Vec<String>> {
    let series = match name {
        "theta" => generators::theta_series(prec),
        "F" | "borwein" => generators::borwein_f(prec),
        "E4" => generators::eisenstein_ek(4, prec),
        other => match octonary_core::bases::eta_catalog().get(other) {
            Some(combo) => combo.expand(prec).map_err(to_py_err)?,
            None => return Err(to_py_err(Error::UnknownSeries(other.to_string()))),
        },
    };
    Ok(series.coeffs().iter().map(format_q).collect())
}

/// Full Kronecker symbol (a|n).
#[pyfunction]
fn kronecker(a: i64, n: i64) -> i32 {
    octonary_core::arith::kronecker(a, n)
}

/// Brute-force representation count of n by a form.
#[pyfunction]
fn count(form: &str, n: u64) -> PyResult<u64> {
    Ok(parse_form(form)?.count_representations(n))
}

/// Labels of the 109 catalog forms.
#[pyfunction]
fn forms() -> Vec<String> {
    repcount::enumerate_forms()
        .iter()
        .map(|f| f.label())
        .collect()
}

/// The four bases and the solver behind one handle; building it expands all
/// basis elements at the given precision (>= 40).
#[pyclass]
struct Session {
    engine: Engine,
}

#[pymethods]
impl Session {
    #[new]
    #[pyo3(signature = (prec = octonary_core::DEFAULT_PREC))]
    fn new(prec: usize) -> PyResult<Self> {
        if prec < 40 {
            return Err(PyValueError::new_err(
                "prec must be at least 40 (2*dim + 8)",
            ));
        }
        Ok(Session {
            engine: Engine::new(prec).map_err(to_py_err)?,
        })
    }

    fn prec(&self) -> usize {
        self.engine.prec()
    }

    /// Exact coordinates of the form's theta product in its space's basis.
    fn solve(&self, form: &str) -> PyResult<Vec<String>> {
        let form = parse_form(form)?;
        let solved = self.engine.solve(&form).map_err(to_py_err)?;
        Ok(solved.entries.iter().map(format_q).collect())
    }

    /// Display names of the basis elements of a space
    /// ("trivial", "chi8", "chi12", "chi24").
    fn basis(&self, space: &str) -> PyResult<Vec<String>> {
        let space = SpaceId::from_name(space).map_err(to_py_err)?;
        Ok(self
            .engine
            .basis(space)
            .elements
            .iter()
            .map(|e| e.descriptor.to_string())
            .collect())
    }

    /// Violations of formula == count for 0 <= n <= n_max, as
    /// (n, formula, count) tuples; empty means verified.
    fn verify(&self, form: &str, n_max: u64) -> PyResult<Vec<(u64, String, u64)>> {
        let form = parse_form(form)?;
        let report = self.engine.verify(&form, n_max).map_err(to_py_err)?;
        Ok(report
            .violations
            .iter()
            .map(|v| (v.n, format_q(&v.formula), v.count))
            .collect())
    }

    /// Listing repairs applied to a space's printed basis, as
    /// (column, printed, substitute) tuples.
    fn remediation(&self, space: &str) -> PyResult<Vec<(usize, String, String)>> {
        let space = SpaceId::from_name(space).map_err(to_py_err)?;
        Ok(match self.engine.remediation(space) {
            None => Vec::new(),
            Some(report) => report
                .replaced
                .iter()
                .map(|r| (r.index, r.printed.to_string(), r.substitute.to_string()))
                .collect(),
        })
    }

    /// Compare solved coordinates against an embedded reference table;
    /// returns (entries_compared, mismatches).
    fn diff_table(&self, table: u8) -> PyResult<(usize, usize)> {
        let audit = self.engine.diff_table(table).map_err(to_py_err)?;
        Ok((audit.diffs.len(), audit.mismatch_count()))
    }
}

#[pymodule]
fn octonary(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQSeries>()?;
    m.add_class::<Session>()?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(borwein, m)?)?;
    m.add_function(wrap_pyfunction!(eta_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(expand, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(forms, m)?)?;
    Ok(())
}
