use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use skeinlab::charvar::{self, CharacterView, Dimension, Oracle};
use skeinlab::knots::{self, KnotFamily};
use skeinlab::rt::{self, CycloField};

fn err(e: skeinlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn family(knot: &str, n: Option<i64>) -> PyResult<KnotFamily> {
    match (knot, n) {
        ("fig8", None) => Ok(KnotFamily::Fig8),
        ("fig8", Some(_)) => Err(PyValueError::new_err("fig8 takes no n")),
        ("torus", Some(n)) => KnotFamily::torus(n).map_err(err),
        ("torus", None) => Err(PyValueError::new_err("torus needs n")),
        _ => Err(PyValueError::new_err(format!("unknown knot {knot:?}"))),
    }
}

#[pyclass(frozen, eq, hash, from_py_object, module = "pyskeinlab")]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Slope(knots::Slope);

#[pymethods]
impl Slope {
    #[new]
    fn new(p: i64, q: i64) -> PyResult<Self> {
        knots::Slope::new(p, q).map(Slope).map_err(err)
    }

    #[staticmethod]
    fn parse(s: &str) -> PyResult<Self> {
        s.parse().map(Slope).map_err(err)
    }

    #[getter]
    fn p(&self) -> i64 {
        self.0.p()
    }

    #[getter]
    fn q(&self) -> i64 {
        self.0.q()
    }

    /// `(s, u)` with `p*u - q*s = 1`.
    fn dual(&self) -> (i64, i64) {
        self.0.dual()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Slope({}, {})", self.0.p(), self.0.q())
    }
}

/// Dimension as `("exact" | "at_least" | "not_determined", value or None)`.
#[pyfunction]
#[pyo3(signature = (knot, slope, n=None))]
fn dimension(knot: &str, slope: Slope, n: Option<i64>) -> PyResult<(&'static str, Option<i64>)> {
    let r = charvar::dimension_report(family(knot, n)?, slope.0).map_err(err)?;
    Ok(match r.dimension {
        Dimension::Exact(d) => ("exact", Some(d)),
        Dimension::AtLeast(d) => ("at_least", Some(d)),
        Dimension::NotDetermined => ("not_determined", None),
    })
}

/// Full report as a JSON string.
#[pyfunction]
#[pyo3(signature = (knot, slope, n=None, precision=128))]
fn dimension_report(knot: &str, slope: Slope, n: Option<i64>, precision: u32) -> PyResult<String> {
    let r = charvar::dimension_report_with(family(knot, n)?, slope.0, precision).map_err(err)?;
    Ok(to_json(&r))
}

#[pyfunction]
#[pyo3(signature = (knot, slope, n=None))]
fn nonabelian_formula(knot: &str, slope: Slope, n: Option<i64>) -> PyResult<i64> {
    Ok(charvar::nonabelian_formula(family(knot, n)?, slope.0).value)
}

/// Exact count of nonabelian characters, or None where it is not available.
#[pyfunction]
#[pyo3(signature = (knot, slope, n=None))]
fn nonabelian_oracle(knot: &str, slope: Slope, n: Option<i64>) -> PyResult<Option<i64>> {
    Ok(
        match charvar::nonabelian_oracle(family(knot, n)?, slope.0).map_err(err)? {
            Oracle::Value(v) => Some(v),
            _ => None,
        },
    )
}

#[pyfunction]
fn count_abelian(slope: Slope) -> PyResult<i64> {
    charvar::count_abelian(slope.0).map_err(err)
}

/// Characters of the filling as a JSON list.
#[pyfunction]
#[pyo3(signature = (knot, slope, n=None, precision=128))]
fn characters(knot: &str, slope: Slope, n: Option<i64>, precision: u32) -> PyResult<String> {
    let chars = charvar::enumerate_characters(family(knot, n)?, slope.0, precision).map_err(err)?;
    let views: Vec<CharacterView> = chars.iter().map(CharacterView::new).collect();
    Ok(to_json(&views))
}

/// Basis monomials as strings, or None if the family is unsupported.
#[pyfunction]
#[pyo3(signature = (knot, slope, n=None))]
fn basis(knot: &str, slope: Slope, n: Option<i64>) -> PyResult<Option<Vec<String>>> {
    let b = charvar::basis(family(knot, n)?, slope.0);
    Ok(b.supported()
        .map(|b| b.monomials.iter().map(|m| m.to_string()).collect()))
}

/// Residue coefficients of the lens space invariant, lowest power of zeta first.
#[pyfunction]
fn rt_lens(p: i64, order: u64) -> PyResult<Vec<String>> {
    let f = CycloField::from_order(order).map_err(err)?;
    Ok(rt::residue_strings(&rt::rt_lens(&f, p).map_err(err)?))
}

/// `(integral, residue, legendre, congruent)`.
#[pyfunction]
fn murakami(p: i64, order: u64) -> PyResult<(bool, Option<i64>, i64, bool)> {
    let f = CycloField::from_order(order).map_err(err)?;
    let m = rt::murakami_check(&f, p).map_err(err)?;
    Ok((m.integral, m.residue, m.legendre, m.congruent))
}

/// Acceptance suite as `(id, name, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (precision=128))]
fn run_suite(py: Python<'_>, precision: u32) -> Vec<(u32, String, bool, String)> {
    py.detach(|| skeinlab::suite::run_suite(precision))
        .into_iter()
        .map(|o| (o.id, o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn pyskeinlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Slope>()?;
    m.add_function(wrap_pyfunction!(dimension, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_report, m)?)?;
    m.add_function(wrap_pyfunction!(nonabelian_formula, m)?)?;
    m.add_function(wrap_pyfunction!(nonabelian_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(count_abelian, m)?)?;
    m.add_function(wrap_pyfunction!(characters, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(rt_lens, m)?)?;
    m.add_function(wrap_pyfunction!(murakami, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
