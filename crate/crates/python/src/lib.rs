//! Python bindings: category files are passed as JSON text, reports come
//! back as plain Python values.

use std::path::PathBuf;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rigcat_core::acceptance::{default_corpus_dir, run_acceptance_suite};
use rigcat_core::fincat::{trace_set, FinCat};
use rigcat_core::freerigid::{fr_end_unit, fr_hom_from_unit, fr_vs_cob, FreeRigid};
use rigcat_core::io::{parse_category_file, DEFAULT_SIZE_BOUND};

fn category(text: &str, size_bound: usize) -> PyResult<FinCat> {
    parse_category_file(text)
        .map_err(|e| PyValueError::new_err(format!("line {}, column {}: {e}", e.line(), e.column())))?
        .into_category(size_bound)
        .map_err(PyValueError::new_err)
}

/// Object and morphism counts of a category file, or `ValueError`.
#[pyfunction]
#[pyo3(signature = (text, size_bound = DEFAULT_SIZE_BOUND))]
fn validate_category(text: &str, size_bound: usize) -> PyResult<(usize, usize)> {
    let cat = category(text, size_bound)?;
    Ok((cat.object_count(), cat.morphism_count()))
}

/// Trace classes as lists of morphism names.
#[pyfunction]
#[pyo3(signature = (text, size_bound = DEFAULT_SIZE_BOUND))]
fn trace_classes(text: &str, size_bound: usize) -> PyResult<Vec<Vec<String>>> {
    let cat = category(text, size_bound)?;
    let traces = trace_set(&cat);
    Ok(traces.classes().iter().map(|c| c.iter().map(|&f| cat.morphism_name(f).to_owned()).collect()).collect())
}

/// Number of endomorphisms of the unit with at most `loops` loops.
#[pyfunction]
fn end_unit_count(text: &str, loops: usize) -> PyResult<usize> {
    let fr = FreeRigid::new(Arc::new(category(text, DEFAULT_SIZE_BOUND)?));
    Ok(fr_end_unit(&fr, loops).elements.len())
}

/// Number of morphisms from the unit to `pos` (positive) then `neg`
/// (negative), with at most `loops` loops.
#[pyfunction]
fn hom_from_unit_count(text: &str, pos: Vec<String>, neg: Vec<String>, loops: usize) -> PyResult<usize> {
    let cat = Arc::new(category(text, DEFAULT_SIZE_BOUND)?);
    let ids = |names: &[String]| -> PyResult<Vec<usize>> {
        names
            .iter()
            .map(|n| cat.object_id(n).ok_or_else(|| PyValueError::new_err(format!("no object named `{n}`"))))
            .collect()
    };
    let (pos, neg) = (ids(&pos)?, ids(&neg)?);
    let fr = FreeRigid::new(cat.clone());
    Ok(fr_hom_from_unit(&fr, &pos, &neg, loops).morphisms.len())
}

/// Whether the terminal envelope matches cobordisms within the bounds.
#[pyfunction]
fn vs_cob(maxlen: usize, bound: usize) -> bool {
    fr_vs_cob(maxlen, bound).passed()
}

/// Runs the command line; returns `(status, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = rigcat_core::cli::run(std::iter::once("rigcat".to_owned()).chain(args));
    (out.status, out.stdout, out.stderr)
}

/// Runs the acceptance suite; returns `(passed, records)`.
#[pyfunction]
#[pyo3(signature = (corpus = None))]
fn acceptance(py: Python<'_>, corpus: Option<PathBuf>) -> (bool, String) {
    let dir = corpus.unwrap_or_else(default_corpus_dir);
    let report = py.detach(|| run_acceptance_suite(&dir));
    (report.passed(), report.report().render_records())
}

#[pyfunction]
fn corpus_dir() -> PathBuf {
    default_corpus_dir()
}

#[pymodule]
fn rigcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(validate_category, m)?)?;
    m.add_function(wrap_pyfunction!(trace_classes, m)?)?;
    m.add_function(wrap_pyfunction!(end_unit_count, m)?)?;
    m.add_function(wrap_pyfunction!(hom_from_unit_count, m)?)?;
    m.add_function(wrap_pyfunction!(vs_cob, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_function(wrap_pyfunction!(acceptance, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_dir, m)?)?;
    Ok(())
}
