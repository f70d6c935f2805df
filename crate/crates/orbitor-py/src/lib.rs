//! Python bindings for the torsion-certificate library.
//!
//! The module mirrors the CLI surface: exact integer linear algebra,
//! characteristic pairs with their reports, q-CW building sequences, and
//! weighted Grassmannians. Matrices cross the boundary as lists of rows of
//! Python ints (arbitrary precision on both sides); structured results come
//! back as JSON strings so Python can `json.loads` them.

use num_bigint::BigInt;
use orbitor::charpair::{face_name, CharacteristicPair, PairInput};
use orbitor::cli::{induced_section, run_from_args};
use orbitor::complexes::FaceComplex;
use orbitor::linalg::{self, IntMatrix, IntVector};
use orbitor::presentation::{emit_presentation, PresentationError};
use orbitor::qcw::{analyze_family, QcwInput};
use orbitor::retraction::{analyze, AnalyzeOptions};
use orbitor::wgrass::WeightedGrassmannian;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_from(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("matrix rows must have equal length"));
    }
    Ok(IntMatrix::from_rows_cols(
        rows.into_iter().map(IntVector::new).collect(),
        cols,
    ))
}

fn matrix_out(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.nrows()).map(|i| m.row(i).entries().to_vec()).collect()
}

fn to_json<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string_pretty(value).map_err(value_err)
}

fn face_id(complex: &FaceComplex, query: &str) -> PyResult<usize> {
    for i in 0..complex.faces().len() {
        if face_name(complex, i) == query {
            return Ok(i);
        }
    }
    let labels: Vec<&str> = query
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if let Some(&f) = complex.faces_by_facet_labels(&labels).first() {
        return Ok(f);
    }
    Err(PyValueError::new_err(format!("no face named {query:?}")))
}

/// Smith normal form; returns `(d, u, v)` with `u * a * v = d`.
#[pyfunction]
fn smith_normal_form(
    rows: Vec<Vec<BigInt>>,
) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let snf = linalg::smith_normal_form(&matrix_from(rows)?);
    Ok((matrix_out(&snf.d), matrix_out(&snf.u), matrix_out(&snf.v)))
}

#[pyfunction]
fn determinant(rows: Vec<Vec<BigInt>>) -> PyResult<BigInt> {
    linalg::determinant(&matrix_from(rows)?).map_err(value_err)
}

#[pyfunction]
fn invariant_factors(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<BigInt>> {
    Ok(linalg::invariant_factors(&matrix_from(rows)?))
}

/// Row basis (in Hermite normal form) of the saturation of the row lattice.
#[pyfunction]
fn saturate_lattice(rows: Vec<Vec<BigInt>>) -> PyResult<Vec<Vec<BigInt>>> {
    let saturated = linalg::saturate_lattice(&matrix_from(rows)?).map_err(value_err)?;
    Ok(matrix_out(&saturated))
}

#[pyfunction]
fn primitive_vector(entries: Vec<BigInt>) -> PyResult<Vec<BigInt>> {
    let v = linalg::primitive_vector(&IntVector::new(entries)).map_err(value_err)?;
    Ok(v.entries().to_vec())
}

/// A characteristic pair over a polytope- or poset-mode face complex.
#[pyclass]
struct ToricPair {
    inner: CharacteristicPair,
}

#[pymethods]
impl ToricPair {
    /// Parses the same JSON document the CLI accepts.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let input: PairInput =
            serde_json::from_str(text).map_err(|e| value_err(format!("invalid pair JSON: {e}")))?;
        Ok(Self {
            inner: input.build().map_err(value_err)?,
        })
    }

    fn dimension(&self) -> usize {
        self.inner.complex().dimension()
    }

    fn facet_labels(&self) -> Vec<String> {
        self.inner.complex().facet_labels().to_vec()
    }

    fn vertex_names(&self) -> Vec<String> {
        let complex = self.inner.complex();
        complex
            .vertices()
            .into_iter()
            .map(|v| complex.vertex_name(v).to_string())
            .collect()
    }

    /// Display names of every face, usable with `local_group_order`.
    fn face_names(&self) -> Vec<String> {
        let complex = self.inner.complex();
        (0..complex.faces().len())
            .map(|i| face_name(complex, i))
            .collect()
    }

    fn candidate_primes(&self) -> PyResult<Vec<u64>> {
        Ok(self
            .inner
            .candidate_primes()
            .map_err(value_err)?
            .into_iter()
            .collect())
    }

    /// `g_E(v)` for the face with the given display name (or comma-separated
    /// facet labels) at the named vertex.
    fn local_group_order(&self, face: &str, vertex: &str) -> PyResult<BigInt> {
        let complex = self.inner.complex();
        let f = face_id(complex, face)?;
        let v = complex
            .vertex_id(vertex)
            .ok_or_else(|| PyValueError::new_err(format!("no vertex named {vertex:?}")))?;
        self.inner.local_group_order(f, v).map_err(value_err)
    }

    /// All `(face, vertex, order)` triples over simple corners.
    fn order_table(&self) -> PyResult<Vec<(String, String, BigInt)>> {
        let complex = self.inner.complex();
        Ok(self
            .inner
            .full_order_table()
            .map_err(value_err)?
            .into_iter()
            .map(|(f, v, g)| {
                (
                    face_name(complex, f),
                    complex.vertex_name(v).to_string(),
                    g,
                )
            })
            .collect())
    }

    /// Full torsion report as JSON (same shape as `analyze-toric --format json`).
    #[pyo3(signature = (primes=None, node_budget=None))]
    fn report_json(&self, primes: Option<Vec<u64>>, node_budget: Option<u64>) -> PyResult<String> {
        let options = AnalyzeOptions {
            primes,
            node_budget,
        };
        to_json(&analyze(&self.inner, &options).map_err(value_err)?)
    }

    #[pyo3(signature = (primes=None, node_budget=None))]
    fn report_text(&self, primes: Option<Vec<u64>>, node_budget: Option<u64>) -> PyResult<String> {
        let options = AnalyzeOptions {
            primes,
            node_budget,
        };
        Ok(analyze(&self.inner, &options)
            .map_err(value_err)?
            .render_text())
    }

    /// Induced pair on the face with the comma-separated facet labels, as
    /// JSON; `basis_hint` uses the CLI's `"1,0;0,1"` matrix syntax.
    #[pyo3(signature = (face, basis_hint=None))]
    fn induced_json(&self, face: &str, basis_hint: Option<&str>) -> PyResult<String> {
        to_json(&induced_section(&self.inner, face, basis_hint).map_err(value_err)?)
    }

    /// Cohomology presentation as JSON; raises `ValueError` when the report
    /// leaves any candidate prime uncertified.
    #[pyo3(signature = (node_budget=None))]
    fn presentation_json(&self, node_budget: Option<u64>) -> PyResult<String> {
        let options = AnalyzeOptions {
            primes: None,
            node_budget,
        };
        let report = analyze(&self.inner, &options).map_err(value_err)?;
        match emit_presentation(&self.inner, &report) {
            Ok(data) => to_json(&data),
            Err(PresentationError::NotCertified) => Err(PyValueError::new_err(
                "presentation refused: not every candidate prime is certified",
            )),
            Err(e) => Err(value_err(e)),
        }
    }

    /// Canonical JSON for this pair, re-parsable by `from_json`.
    fn to_json(&self) -> PyResult<String> {
        to_json(&self.inner.to_input())
    }
}

/// Report for one or more q-CW building sequences, as JSON. `text` takes
/// either `{"cells": [...]}` or `{"sequences": [[...], ...]}`.
#[pyfunction]
#[pyo3(signature = (text, primes=None))]
fn qcw_report_json(text: &str, primes: Option<Vec<u64>>) -> PyResult<String> {
    let input: QcwInput =
        serde_json::from_str(text).map_err(|e| value_err(format!("invalid q-CW JSON: {e}")))?;
    let family = input.build().map_err(value_err)?;
    let report = analyze_family(&family, &primes.unwrap_or_default()).map_err(value_err)?;
    to_json(&report)
}

/// Report for the weighted Grassmannian wGr(d, n) with the given weights
/// and `r`, as JSON. Weights default to zero and `r` to one.
#[pyfunction]
#[pyo3(signature = (d, n, weights=None, r=None, primes=None))]
fn grassmann_report_json(
    d: usize,
    n: usize,
    weights: Option<Vec<BigInt>>,
    r: Option<BigInt>,
    primes: Option<Vec<u64>>,
) -> PyResult<String> {
    let weights = weights.unwrap_or_else(|| vec![BigInt::from(0); n]);
    let r = r.unwrap_or_else(|| BigInt::from(1));
    let grassmannian = WeightedGrassmannian::new(d, n, weights, r).map_err(value_err)?;
    let report = grassmannian
        .report(&primes.unwrap_or_default())
        .map_err(value_err)?;
    to_json(&report)
}

/// Runs the CLI in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut full = vec!["orbitor".to_string()];
    full.extend(args);
    let out = run_from_args(full);
    (out.code, out.stdout, out.stderr)
}

/// Fills `m` with every function and class this module exports.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(determinant, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_factors, m)?)?;
    m.add_function(wrap_pyfunction!(saturate_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(primitive_vector, m)?)?;
    m.add_function(wrap_pyfunction!(qcw_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(grassmann_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add_class::<ToricPair>()?;
    Ok(())
}

#[pymodule]
fn orbitor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
