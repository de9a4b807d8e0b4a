//! Python bindings. Results come back as plain dicts and lists; exact
//! rationals are rendered as strings such as "-45/128".

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use voaf_core::characters::{graded_dimension, twisted_graded_dimension};
use voaf_core::exact::{parse_rat, Rat};
use voaf_core::fock::FockVector;
use voaf_core::fusion::{self, full_table, generator_set};
use voaf_core::labels::ModuleLabel;
use voaf_core::verify::{self, run_suite, Suite, VerifyOptions};
use voaf_core::virasoro::express_in_descendants;
use voaf_core::zhu::contraction_eval;
use voaf_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::UnsupportedParameter(_) | Error::SectorMismatch | Error::SectorRule(_) | Error::ThetaOnLambda => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn label(t: &str) -> PyResult<ModuleLabel> {
    t.parse().map_err(|e: voaf_core::error::ParseError| PyValueError::new_err(e.to_string()))
}

fn rational(t: &str) -> PyResult<Rat> {
    parse_rat(t.trim()).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Top-level eigenvalues of o(omega) and o(J) for the five module families.
#[pyfunction]
fn table41(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let rows: Vec<_> = verify::table41()
        .map_err(err)?
        .into_iter()
        .map(|r| serde_json::json!({"module": r.module.to_string(), "a": r.weight.to_string(), "b": r.j.to_string()}))
        .collect();
    to_py(py, &rows)
}

/// Graded dimension of `module` up to relative q-order `cutoff`.
/// "Mtheta" gives the whole twisted module.
#[pyfunction]
#[pyo3(signature = (module, cutoff = "20"))]
fn char_series<'py>(py: Python<'py>, module: &str, cutoff: &str) -> PyResult<Bound<'py, PyAny>> {
    let cutoff = rational(cutoff)?;
    let s = if module.trim() == "Mtheta" { twisted_graded_dimension(&cutoff) } else { graded_dimension(&label(module)?, &cutoff).map_err(err)? };
    to_py(py, &s)
}

/// The fusion rule N(m, n; l), either 0 or 1.
#[pyfunction]
fn fusion_rule(m: &str, n: &str, l: &str) -> PyResult<u8> {
    Ok(fusion::decide(&label(m)?, &label(n)?, &label(l)?).map_err(err)?.verdict)
}

/// Full certificate for N(m, n; l).
#[pyfunction]
fn fusion_certificate<'py>(py: Python<'py>, m: &str, n: &str, l: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = fusion::decide(&label(m)?, &label(n)?, &label(l)?).map_err(err)?;
    to_py(py, &c)
}

/// Fusion table as CSV over the fixed modules plus M(1, lam) for each lam^2.
#[pyfunction]
fn fusion_table_csv(lambda_squares: Vec<String>) -> PyResult<String> {
    let ss = lambda_squares.iter().map(|t| rational(t)).collect::<PyResult<Vec<_>>>()?;
    Ok(full_table(&ss).map_err(err)?.to_csv())
}

/// Descendant coordinates and contraction polynomials of a state of `module`.
#[pyfunction]
fn reduce<'py>(py: Python<'py>, module: &str, expr: &str) -> PyResult<Bound<'py, PyAny>> {
    let m = label(module)?;
    let v = FockVector::parse(expr, m.s()).map_err(|e| PyValueError::new_err(e.to_string()))?;
    if v.sector() != &m.sector() || v.terms().any(|(p, _)| !m.contains(p)) {
        return Err(PyValueError::new_err(format!("{v} is not a vector of {m}")));
    }
    let gens = generator_set(&m);
    let coords = express_in_descendants(&v, &gens).map_err(err)?;
    let contraction = contraction_eval(&v, &gens).map_err(err)?;
    let cs: Vec<_> = coords.coords.iter().map(|(w, c)| serde_json::json!({"word": w.to_string(), "coefficient": c.to_string()})).collect();
    let gs: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    to_py(py, &serde_json::json!({"vector": v.to_string(), "generators": gs, "coordinates": cs, "contraction": contraction}))
}

/// Runs one verification suite and returns its report.
#[pyfunction]
#[pyo3(signature = (suite, cutoff = 6, char_cutoff = "20"))]
fn verify_suite<'py>(py: Python<'py>, suite: &str, cutoff: u32, char_cutoff: &str) -> PyResult<Bound<'py, PyAny>> {
    let s: Suite = suite.parse().map_err(err)?;
    let opts = VerifyOptions { char_cutoff: rational(char_cutoff)?, membership_cutoff: cutoff, ..VerifyOptions::default() };
    let report = py.detach(|| run_suite(s, &opts)).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn _voaf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(table41, m)?)?;
    m.add_function(wrap_pyfunction!(char_series, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_rule, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(fusion_table_csv, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
