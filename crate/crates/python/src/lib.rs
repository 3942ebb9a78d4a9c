//! Python bindings, imported as `unicellular_rs`.
//!
//! Oriented edges are signed 1-based integers, as in the extended coding
//! syntax: `3` is the third edge, `-3` its reverse.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use unicellular as core;
use unicellular::{GraphMode, IntVector, Letter, MoveTag, MoveWord, TransvectionMove};

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn letter(k: i64) -> PyResult<Letter> {
    if k == 0 {
        return Err(PyValueError::new_err(
            "edge 0 does not exist; edges are numbered from 1",
        ));
    }
    Ok(Letter::new(k.unsigned_abs() as usize - 1, k < 0))
}

#[pyclass(name = "Coding", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyCoding {
    inner: core::Coding,
}

#[pymethods]
impl PyCoding {
    /// Accepts compact (`abAB`) or extended (`1 2 -1 -2`) text.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        core::parse_coding(text)
            .map(|inner| PyCoding { inner })
            .map_err(err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Coding('{}')", self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn genus(&self) -> usize {
        core::analyze(&self.inner).genus
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        core::analyze(&self.inner).vertex_count
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn degrees(&self) -> Vec<usize> {
        core::analyze(&self.inner).degree_partition
    }

    /// Signed letters, extended form.
    fn letters(&self) -> Vec<i64> {
        self.inner.letters().iter().map(|l| l.signed()).collect()
    }

    fn extended(&self) -> String {
        self.inner.to_extended()
    }

    fn canonical(&self) -> Self {
        PyCoding {
            inner: core::canonical_form(&self.inner),
        }
    }

    fn equivalent(&self, other: &PyCoding) -> bool {
        core::equivalent(&self.inner, &other.inner)
    }

    fn intertwined(&self, x: i64, y: i64) -> PyResult<bool> {
        core::intertwined(&self.inner, letter(x)?, letter(y)?).map_err(err)
    }

    fn surgery(&self, x: i64, y: i64) -> PyResult<Self> {
        core::do_surgery(&self.inner, letter(x)?, letter(y)?)
            .map(|inner| PyCoding { inner })
            .map_err(err)
    }

    /// `(x, y, canonical result)` for every admissible pair.
    fn surgeries(&self) -> Vec<(i64, i64, PyCoding)> {
        core::all_surgeries(&self.inner)
            .into_iter()
            .map(|(x, y, inner)| (x.signed(), y.signed(), PyCoding { inner }))
            .collect()
    }

    fn double_surgery_identity(&self, x: i64, y: i64) -> PyResult<bool> {
        core::double_surgery_identity(&self.inner, letter(x)?, letter(y)?).map_err(err)
    }

    fn intersection_form(&self) -> PyResult<Vec<Vec<u8>>> {
        core::intersection_form(&self.inner)
            .map(|f| f.matrix)
            .map_err(err)
    }

    /// Bits of `[G]` on the fundamental cycles; needs even degrees.
    fn graph_class(&self) -> PyResult<Vec<u8>> {
        core::graph_class(&self.inner).map(|v| v.bits).map_err(err)
    }

    /// Curves of a 4-valent map as lists of 1-based edge ids.
    fn curves(&self) -> PyResult<Vec<Vec<usize>>> {
        let d = core::constituent_curves(&self.inner).map_err(err)?;
        Ok(d.curves
            .into_iter()
            .map(|c| c.into_iter().map(|e| e + 1).collect())
            .collect())
    }
}

#[pyfunction]
fn enumerate_maps(genus: usize, degrees: Vec<usize>) -> PyResult<Vec<PyCoding>> {
    let maps = core::enumerate_maps(genus, &degrees).map_err(err)?;
    Ok(maps.into_iter().map(|inner| PyCoding { inner }).collect())
}

#[pyfunction]
fn chain_collection(genus: usize) -> PyResult<PyCoding> {
    core::chain_collection(genus)
        .map(|inner| PyCoding { inner })
        .map_err(err)
}

/// Builds the surgery graph and returns nodes, edges and metrics.
#[pyfunction]
#[pyo3(signature = (genus, degrees, mode = "full", seed = None))]
fn surgery_graph<'py>(
    py: Python<'py>,
    genus: usize,
    degrees: Vec<usize>,
    mode: &str,
    seed: Option<PyCoding>,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match mode {
        "full" => GraphMode::Full,
        "bfs" => GraphMode::Bfs,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let seed = seed.map(|s| s.inner);
    let g = py
        .detach(|| core::build_surgery_graph(genus, &degrees, mode, seed.as_ref()))
        .map_err(err)?;
    let m = core::graph_metrics(&g);
    let out = PyDict::new(py);
    let nodes: Vec<PyCoding> = g
        .nodes
        .iter()
        .cloned()
        .map(|inner| PyCoding { inner })
        .collect();
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|&(i, j, _)| (i, j)).collect();
    out.set_item("nodes", nodes)?;
    out.set_item("edges", edges)?;
    out.set_item("components", m.components)?;
    out.set_item("diameters", m.diameters)?;
    Ok(out)
}

/// Moves `(tag, class, power)` taking `v` to `x1`.
#[pyfunction]
fn vector_reduce(v: Vec<BigInt>) -> PyResult<Vec<(String, Vec<BigInt>, BigInt)>> {
    let word = core::vector_reduce(&IntVector(v)).map_err(err)?;
    Ok(word
        .0
        .into_iter()
        .map(|m| (m.tag.as_str().to_string(), m.class.0, m.power))
        .collect())
}

#[pyfunction]
fn apply_move_word(
    word: Vec<(String, Vec<BigInt>, BigInt)>,
    v: Vec<BigInt>,
) -> PyResult<Vec<BigInt>> {
    let moves = word
        .into_iter()
        .map(|(tag, class, power)| {
            let tag = match tag.as_str() {
                "xi" => MoveTag::Xi,
                "eta" => MoveTag::Eta,
                "complement" => MoveTag::Complement,
                other => return Err(PyValueError::new_err(format!("unknown tag {other:?}"))),
            };
            Ok(TransvectionMove {
                class: IntVector(class),
                power,
                tag,
            })
        })
        .collect::<PyResult<Vec<_>>>()?;
    core::apply_move_word(&MoveWord(moves), &IntVector(v))
        .map(|r| r.0)
        .map_err(err)
}

/// Size of the orbit of `x1` under `Sp(2g, 2)`.
#[pyfunction]
fn orbit_size(genus: usize) -> PyResult<usize> {
    core::orbit_of(1, &core::standard_generators(genus)).map_err(err)
}

#[pyfunction]
fn sp_order(genus: usize) -> PyResult<u128> {
    if genus > 7 {
        return Err(PyValueError::new_err(
            "|Sp(2g, 2)| exceeds 128 bits beyond genus 7",
        ));
    }
    Ok(core::sp_order(genus))
}

/// `(generated_order, stabilizer_order, equal)`.
#[pyfunction]
#[pyo3(signature = (genus, full_span = false))]
fn stabilizer_check(py: Python<'_>, genus: usize, full_span: bool) -> PyResult<(u128, u128, bool)> {
    let classes = if full_span {
        core::full_span_classes(genus)
    } else {
        core::humphries_classes(genus)
    };
    let r = py
        .detach(|| core::stabilizer_check(genus, &classes))
        .map_err(err)?;
    Ok((r.generated_order, r.stabilizer_order, r.equal))
}

#[pymodule]
fn unicellular_rs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoding>()?;
    m.add_function(wrap_pyfunction!(enumerate_maps, m)?)?;
    m.add_function(wrap_pyfunction!(chain_collection, m)?)?;
    m.add_function(wrap_pyfunction!(surgery_graph, m)?)?;
    m.add_function(wrap_pyfunction!(vector_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(apply_move_word, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_size, m)?)?;
    m.add_function(wrap_pyfunction!(sp_order, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer_check, m)?)?;
    Ok(())
}
