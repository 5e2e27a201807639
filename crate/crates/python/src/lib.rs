use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ncwl::codec::{self, CodecContext, ExactRational};
use ncwl::nn;
use ncwl::wl::{self, Method};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_method(method: &str) -> PyResult<Method> {
    method.parse().map_err(value_err)
}

/// Simple undirected graph with integer node labels.
#[pyclass(name = "Graph", module = "ncwl_py", frozen)]
struct PyGraph {
    inner: ncwl::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (node_count, edges, labels=None))]
    fn new(node_count: usize, edges: Vec<(usize, usize)>, labels: Option<Vec<u32>>) -> PyResult<Self> {
        let mut g = ncwl::Graph::from_edges(node_count, &edges).map_err(value_err)?;
        if let Some(labels) = labels {
            g = g.with_labels(labels).map_err(value_err)?;
        }
        Ok(PyGraph { inner: g })
    }

    /// Parses the edge-list text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        ncwl::parse_edge_list(text).map(|inner| PyGraph { inner }).map_err(value_err)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<u32> {
        self.inner.labels().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.node_count() {
            return Err(value_err(format!("no node {v}")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn neighbor_edges(&self, v: usize) -> PyResult<Vec<(usize, usize)>> {
        let edges = self.inner.neighbor_edges(v).map_err(value_err)?;
        Ok(edges.iter().map(|e| e.endpoints).collect())
    }

    /// Node `v` becomes `perm[v]`.
    fn permute(&self, perm: Vec<usize>) -> PyResult<Self> {
        let n = self.inner.node_count();
        let mut seen = vec![false; n];
        if perm.len() != n || !perm.iter().all(|&p| p < n && !std::mem::replace(&mut seen[p], true)) {
            return Err(value_err("not a permutation of the nodes"));
        }
        Ok(PyGraph {
            inner: self.inner.permute(&perm),
        })
    }

    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let s = self.inner.stats();
        let d = PyDict::new(py);
        d.set_item("node_count", s.node_count)?;
        d.set_item("edge_count", s.edge_count)?;
        d.set_item("triangle_count", s.triangle_count)?;
        d.set_item("messages_nc_per_node", s.messages_nc_per_node.clone())?;
        d.set_item("avg_messages_nc", fraction(py, &s.avg_messages_nc.to_string())?)?;
        d.set_item("max_messages_nc", s.max_messages_nc)?;
        d.set_item("max_degree", s.max_degree)?;
        d.set_item("memory_bound", s.memory_bound)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.node_count(), self.inner.edge_count())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

fn fraction<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((text,))
}

fn rational_from_py(value: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let text = value.str()?.to_string();
    text.trim().parse::<ExactRational>().map_err(|_| value_err(format!("not a rational: {text}")))
}

/// Per-round colorings, each a list of node colors.
#[pyfunction]
#[pyo3(signature = (graph, method="1wl", k_cap=None))]
fn refine(graph: &PyGraph, method: &str, k_cap: Option<usize>) -> PyResult<Vec<Vec<u32>>> {
    let history = wl::refine_with_cap(&graph.inner, parse_method(method)?, k_cap).map_err(value_err)?;
    Ok(history.iter().map(|c| c.colors().to_vec()).collect())
}

/// Joint refinement of two graphs.
#[pyfunction]
#[pyo3(signature = (first, second, method="nc1wl", k_cap=None))]
fn compare<'py>(
    py: Python<'py>,
    first: &PyGraph,
    second: &PyGraph,
    method: &str,
    k_cap: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let report = wl::compare_with_cap(&first.inner, &second.inner, parse_method(method)?, k_cap).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("method", report.method.as_str())?;
    d.set_item("distinguished", report.verdict.is_distinguished())?;
    d.set_item("iterations_run", report.iterations_run)?;
    d.set_item("distinguishing_iteration", report.distinguishing_iteration)?;
    d.set_item("histograms", report.histograms.clone())?;
    Ok(d)
}

#[pyfunction]
fn brute_force_isomorphic(first: &PyGraph, second: &PyGraph) -> PyResult<bool> {
    wl::brute_force_isomorphic(&first.inner, &second.inner).map_err(value_err)
}

#[pyfunction]
fn disjoint_union(first: &PyGraph, second: &PyGraph) -> (PyGraph, usize) {
    let (inner, offset) = ncwl::disjoint_union(&first.inner, &second.inner);
    (PyGraph { inner }, offset)
}

/// `sum N^-x` over the multiset, as a `fractions.Fraction`.
#[pyfunction]
fn encode_multiset<'py>(py: Python<'py>, elements: Vec<u64>, base: u64) -> PyResult<Bound<'py, PyAny>> {
    let ctx = CodecContext::new(base).map_err(value_err)?;
    let h = ctx.encode_multiset(&elements).map_err(value_err)?;
    fraction(py, &h.to_string())
}

/// Accepts a `Fraction`, an int, or a string such as `"9/8"`.
#[pyfunction]
fn decode_multiset(value: &Bound<'_, PyAny>, base: u64) -> PyResult<Vec<u64>> {
    codec::decode_multiset(&rational_from_py(value)?, base).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (alphabet=3, max_card=2, base=None))]
fn codec_check<'py>(py: Python<'py>, alphabet: u64, max_card: usize, base: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let r = codec::exhaustive_check(alphabet, max_card, base).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("base", r.base)?;
    d.set_item("pairwise_inputs", r.pairwise_inputs)?;
    d.set_item("pairwise_distinct", r.pairwise_distinct)?;
    d.set_item("centered_inputs", r.centered_inputs)?;
    d.set_item("centered_distinct", r.centered_distinct)?;
    d.set_item("injective", r.is_injective())?;
    Ok(d)
}

fn default_labels(g: &ncwl::Graph) -> usize {
    g.labels().iter().max().map_or(1, |&l| l as usize + 1)
}

/// Sum-readout embedding through seeded random NC-GNN (or GIN) layers.
#[pyfunction]
#[pyo3(signature = (graph, layers=2, dim=16, seed=0, num_labels=None, gin=false))]
fn embed(graph: &PyGraph, layers: usize, dim: usize, seed: u64, num_labels: Option<usize>, gin: bool) -> PyResult<Vec<f64>> {
    let num_labels = num_labels.unwrap_or_else(|| default_labels(&graph.inner));
    let params = nn::random_layers(num_labels, dim, layers, seed);
    let run = if gin { nn::embed_graph_gin } else { nn::embed_graph };
    run(&graph.inner, &params, num_labels).map_err(value_err)
}

/// Built-in corpus as a list of dicts with graphs and expected verdicts.
#[pyfunction]
fn load_corpus<'py>(py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    ncwl::corpus::load_corpus()
        .into_iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("name", &e.name)?;
            d.set_item("first", PyGraph { inner: e.graphs.0.clone() })?;
            d.set_item("second", PyGraph { inner: e.graphs.1.clone() })?;
            let verdicts = PyDict::new(py);
            for m in Method::ALL {
                verdicts.set_item(m.as_str(), e.expected(m).is_distinguished())?;
            }
            d.set_item("distinguished", verdicts)?;
            d.set_item("isomorphic", e.oracle_isomorphic.as_bool())?;
            d.set_item("provenance", e.provenance.as_str())?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn ncwl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(refine, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(disjoint_union, m)?)?;
    m.add_function(wrap_pyfunction!(encode_multiset, m)?)?;
    m.add_function(wrap_pyfunction!(decode_multiset, m)?)?;
    m.add_function(wrap_pyfunction!(codec_check, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(load_corpus, m)?)?;
    Ok(())
}
