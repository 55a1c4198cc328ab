//! Python bindings: permutations, generated groups, graphs, the family
//! constructors and the theorem-level operations, mirroring the Rust API.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use std::collections::BTreeSet;

use etsemi::constructions;
use etsemi::families;
use etsemi::graph;
use etsemi::group;
use etsemi::named;
use etsemi::perm;
use etsemi::semireg;
use etsemi::symmetry;
use etsemi::DEFAULT_CAP;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize_to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let json = serde_json::to_value(value).map_err(runtime_err)?;
    json_to_py(py, &json)
}

/// A permutation of {0, …, m-1} given by its image table.
#[pyclass(name = "Permutation", frozen, from_py_object)]
#[derive(Clone)]
struct PyPermutation {
    inner: perm::Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: perm::Permutation::from_images(images).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn identity(degree: usize) -> Self {
        PyPermutation {
            inner: perm::Permutation::identity(degree),
        }
    }

    #[staticmethod]
    fn from_cycles(degree: usize, cycles: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: perm::Permutation::from_cycles(degree, &cycles).map_err(value_err)?,
        })
    }

    fn images(&self) -> Vec<usize> {
        self.inner.images().to_vec()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn image(&self, x: usize) -> PyResult<usize> {
        if x >= self.inner.degree() {
            return Err(value_err("point outside the domain"));
        }
        Ok(self.inner.image(x))
    }

    /// Left-to-right composition: (p.compose(q))(x) = q(p(x)).
    fn compose(&self, other: &PyPermutation) -> PyResult<PyPermutation> {
        Ok(PyPermutation {
            inner: self.inner.compose(&other.inner).map_err(value_err)?,
        })
    }

    fn inverse(&self) -> PyPermutation {
        PyPermutation {
            inner: self.inner.inverse(),
        }
    }

    fn pow(&self, k: i64) -> PyPermutation {
        PyPermutation {
            inner: self.inner.pow(k),
        }
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        self.inner.cycles()
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn fixed_points(&self) -> Vec<usize> {
        self.inner.fixed_points()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({})", self.inner)
    }

    fn __eq__(&self, other: &PyPermutation) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut hasher);
        hasher.finish()
    }
}

/// A finitely generated permutation group with an exact stabilizer chain.
#[pyclass(name = "Group", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: group::GeneratedGroup,
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(domain_size: usize, generators: Vec<PyPermutation>) -> PyResult<Self> {
        let gens = generators.into_iter().map(|p| p.inner).collect();
        Ok(PyGroup {
            inner: group::GeneratedGroup::new(domain_size, gens).map_err(value_err)?,
        })
    }

    fn domain_size(&self) -> usize {
        self.inner.domain_size()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.inner
            .generators()
            .iter()
            .map(|p| PyPermutation { inner: p.clone() })
            .collect()
    }

    fn order(&self) -> u128 {
        self.inner.order()
    }

    fn contains(&self, p: &PyPermutation) -> bool {
        self.inner.contains(&p.inner)
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.inner.orbits()
    }

    fn stabilizer(&self, x: usize) -> PyResult<PyGroup> {
        Ok(PyGroup {
            inner: self.inner.stabilizer(x).map_err(value_err)?,
        })
    }

    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn elements(&self, cap: u64) -> PyResult<Vec<PyPermutation>> {
        Ok(self
            .inner
            .elements(cap)
            .map_err(runtime_err)?
            .map(|p| PyPermutation { inner: p })
            .collect())
    }

    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn prime_order_elements(&self, cap: u64) -> PyResult<Vec<PyPermutation>> {
        Ok(self
            .inner
            .prime_order_elements(cap)
            .map_err(runtime_err)?
            .map(|p| PyPermutation { inner: p })
            .collect())
    }

    fn derived_subgroup(&self) -> PyGroup {
        PyGroup {
            inner: self.inner.derived_subgroup(),
        }
    }

    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn is_solvable(&self, cap: u64) -> Option<bool> {
        self.inner.is_solvable(cap)
    }

    fn __repr__(&self) -> String {
        format!(
            "Group(domain_size={}, generators={}, order={})",
            self.inner.domain_size(),
            self.inner.generators().len(),
            self.inner.order()
        )
    }
}

/// A finite simple undirected graph on {0, …, n-1}.
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::Graph::from_edge_list(n, &edges).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(data: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::Graph::from_json(data).map_err(value_err)?,
        })
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn degree(&self, v: usize) -> usize {
        self.inner.degree(v)
    }

    fn neighbors(&self, v: usize) -> Vec<usize> {
        self.inner.neighbors(v).to_vec()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn regular_valency(&self) -> Option<usize> {
        self.inner.regular_valency()
    }

    fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        self.inner.bipartition().map(|parts| {
            (
                parts.part_a.into_iter().collect(),
                parts.part_b.into_iter().collect(),
            )
        })
    }

    fn twin_classes(&self) -> Vec<Vec<usize>> {
        self.inner.twin_classes()
    }

    fn is_automorphism(&self, p: &PyPermutation) -> bool {
        self.inner.is_automorphism(&p.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }

    fn __eq__(&self, other: &PyGraph) -> bool {
        self.inner == other.inner
    }
}

/// W(n,2): ring of n twin pairs, labeling (i,u) ↦ 2i+u.
#[pyfunction]
fn wreath(n: usize) -> PyResult<PyGraph> {
    let (g, _) = families::wreath(n).map_err(value_err)?;
    Ok(PyGraph { inner: g })
}

/// The subdivided double DDΛ of a base graph.
#[pyfunction]
fn subdivided_double(base: &PyGraph) -> PyResult<PyGraph> {
    let (g, _) = families::subdivided_double(&base.inner).map_err(value_err)?;
    Ok(PyGraph { inner: g })
}

#[pyfunction]
fn subdivision(base: &PyGraph) -> PyGraph {
    PyGraph {
        inner: families::subdivision(&base.inner),
    }
}

#[pyfunction]
fn complete_bipartite(m: usize, n: usize) -> PyResult<PyGraph> {
    if m == 0 || n == 0 {
        return Err(value_err("part sizes must be positive"));
    }
    Ok(PyGraph {
        inner: families::complete_bipartite(m, n),
    })
}

/// A named corpus graph: `petersen`, `heawood`, `wreath-8`, `dd-k44`, …
#[pyfunction]
fn named_graph(name: &str) -> PyResult<PyGraph> {
    named::by_name(name)
        .map(|inner| PyGraph { inner })
        .ok_or_else(|| value_err(format!("unknown graph `{name}`")))
}

#[pyfunction]
fn recognize_wreath(g: &PyGraph) -> Option<usize> {
    families::recognize_wreath(&g.inner).map(|m| m.n)
}

#[pyfunction]
fn recognize_subdivided_double(g: &PyGraph) -> Option<PyGraph> {
    families::recognize_subdivided_double(&g.inner).map(|m| PyGraph { inner: m.base })
}

#[pyfunction]
fn automorphism_group(g: &PyGraph) -> PyGroup {
    PyGroup {
        inner: symmetry::automorphism_group(&g.inner),
    }
}

/// Transitivity report as a dict; the full automorphism group is used when
/// no group is given.
#[pyfunction]
#[pyo3(signature = (g, grp = None))]
fn classify<'py>(
    py: Python<'py>,
    g: &PyGraph,
    grp: Option<&PyGroup>,
) -> PyResult<Bound<'py, PyAny>> {
    let group = match grp {
        Some(grp) => grp.inner.clone(),
        None => symmetry::automorphism_group(&g.inner),
    };
    let report = symmetry::classify(&g.inner, &group).map_err(value_err)?;
    serialize_to_py(py, &report)
}

/// Complete prime-order scan for a semiregular element, optionally
/// restricted to preserve the listed invariant subsets. Returns the
/// certificate dict or None.
#[pyfunction]
#[pyo3(signature = (grp, subsets = None, cap = DEFAULT_CAP))]
fn find_semiregular<'py>(
    py: Python<'py>,
    grp: &PyGroup,
    subsets: Option<Vec<Vec<usize>>>,
    cap: u64,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let sets: Vec<BTreeSet<usize>> = subsets
        .unwrap_or_default()
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();
    let scan = semireg::find_semiregular(&grp.inner, &sets, cap).map_err(runtime_err)?;
    match scan.certificate {
        Some(cert) => Ok(Some(serialize_to_py(py, &cert)?)),
        None => Ok(None),
    }
}

/// Certificate for an edge-transitive group on a connected cubic graph.
#[pyfunction]
#[pyo3(signature = (g, grp, cap = DEFAULT_CAP))]
fn theorem_3valent<'py>(
    py: Python<'py>,
    g: &PyGraph,
    grp: &PyGroup,
    cap: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = semireg::theorem_3valent(&g.inner, &grp.inner, cap).map_err(runtime_err)?;
    serialize_to_py(py, &cert)
}

/// The 4-valent trichotomy report as a dict (outcome plus both scans).
#[pyfunction]
#[pyo3(signature = (g, grp, cap = DEFAULT_CAP))]
fn theorem_4valent<'py>(
    py: Python<'py>,
    g: &PyGraph,
    grp: &PyGroup,
    cap: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let report = semireg::theorem_4valent(&g.inner, &grp.inner, cap).map_err(runtime_err)?;
    serialize_to_py(py, &report)
}

/// Part-preserving semiregular certificate for a connected bipartite
/// locally arc-transitive regular graph of valency at most 4.
#[pyfunction]
#[pyo3(signature = (g, cap = DEFAULT_CAP))]
fn part_preserving_certificate<'py>(
    py: Python<'py>,
    g: &PyGraph,
    cap: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let cert = semireg::corollary_part_preserving(&g.inner, cap).map_err(runtime_err)?;
    serialize_to_py(py, &cert)
}

/// Builds one of the two built-in constructions and returns (graph, group).
#[pyfunction]
fn construction(target: &str, n: u32) -> PyResult<(PyGraph, PyGroup)> {
    match target {
        "lemma41" => {
            let inst = constructions::build_lemma41(n).map_err(value_err)?;
            Ok((
                PyGraph { inner: inst.graph },
                PyGroup { inner: inst.group },
            ))
        }
        "lemma42" => {
            let inst = constructions::build_lemma42(n).map_err(value_err)?;
            Ok((
                PyGraph {
                    inner: inst.sigma_graph,
                },
                PyGroup { inner: inst.group },
            ))
        }
        other => Err(value_err(format!("unknown construction `{other}`"))),
    }
}

/// Runs the full verification report for one of the built-in
/// constructions; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (target, n, cap = DEFAULT_CAP))]
fn verify_construction<'py>(
    py: Python<'py>,
    target: &str,
    n: u32,
    cap: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let report = match target {
        "lemma41" => {
            let inst = constructions::build_lemma41(n).map_err(value_err)?;
            constructions::verify_lemma41(&inst, cap)
        }
        "lemma42" => {
            let inst = constructions::build_lemma42(n).map_err(value_err)?;
            constructions::verify_lemma42(&inst, cap)
        }
        other => return Err(value_err(format!("unknown construction `{other}`"))),
    };
    serialize_to_py(py, &report)
}

#[pymodule]
fn etsemi_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(wreath, m)?)?;
    m.add_function(wrap_pyfunction!(subdivided_double, m)?)?;
    m.add_function(wrap_pyfunction!(subdivision, m)?)?;
    m.add_function(wrap_pyfunction!(complete_bipartite, m)?)?;
    m.add_function(wrap_pyfunction!(named_graph, m)?)?;
    m.add_function(wrap_pyfunction!(recognize_wreath, m)?)?;
    m.add_function(wrap_pyfunction!(recognize_subdivided_double, m)?)?;
    m.add_function(wrap_pyfunction!(automorphism_group, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(find_semiregular, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_3valent, m)?)?;
    m.add_function(wrap_pyfunction!(theorem_4valent, m)?)?;
    m.add_function(wrap_pyfunction!(part_preserving_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(construction, m)?)?;
    m.add_function(wrap_pyfunction!(verify_construction, m)?)?;
    Ok(())
}
