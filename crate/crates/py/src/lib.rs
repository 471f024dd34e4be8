//! Python bindings: the command-line dispatcher as functions.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use rmva::cli::{run_on, Request};
use clap::Parser;

create_exception!(rmva_py, RmvaError, PyException);

fn request(args: Vec<String>) -> PyResult<Request> {
    Request::try_parse_from(std::iter::once("rmva".to_string()).chain(args)).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Run with command-line arguments on `input`; returns `(code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (args, input = ""))]
fn run(args: Vec<String>, input: &str) -> PyResult<(i32, String, String)> {
    let o = run_on(&request(args)?, input);
    Ok((o.code, o.stdout, o.stderr))
}

/// Compute an invariant and return the parsed JSON value.
#[pyfunction]
#[pyo3(signature = (mode, invariant, text, close = None))]
fn invariant<'py>(py: Python<'py>, mode: &str, invariant: &str, text: &str, close: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let mut args: Vec<String> = ["--mode", mode, "--invariant", invariant, "--format", "json"].iter().map(|s| s.to_string()).collect();
    if let Some(c) = close.filter(|c| !c.is_empty()) {
        args.push("--close".into());
        args.push(c.join(","));
    }
    let o = run_on(&request(args)?, text);
    let value = py.import("json")?.call_method1("loads", (o.stdout.as_str(),))?;
    match o.code {
        0 => Ok(value),
        2 if o.stdout.is_empty() => Err(PyValueError::new_err(o.stderr.trim().to_string())),
        _ => Err(RmvaError::new_err(value.get_item("error")?.unbind())),
    }
}

/// Run a built-in verification suite; returns whether every check passed.
#[pyfunction]
fn check(suite: &str) -> PyResult<bool> {
    let o = run_on(&request(vec!["--check".into(), suite.into()])?, "");
    Ok(o.code == 0)
}

#[pymodule]
pub fn rmva_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add("RmvaError", m.py().get_type::<RmvaError>())?;
    Ok(())
}
