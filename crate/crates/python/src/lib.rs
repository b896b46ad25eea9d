//! Python bindings. Everything mirrors the core library: graphs are
//! immutable handles, colorings are plain lists of 1-based colors, and
//! structured reports cross the boundary as dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

use grundy_core::chordal;
use grundy_core::exact;
use grundy_core::graph;
use grundy_core::io;
use grundy_core::sim;
use grundy_core::{coloring, ColoringKind, FamilySpec, VertexOrder};

fn value_error(err: grundy_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_kind(kind: &str) -> PyResult<ColoringKind> {
    kind.parse().map_err(value_error)
}

fn coloring_from(colors: Vec<usize>) -> PyResult<coloring::Coloring> {
    coloring::Coloring::new(colors).map_err(value_error)
}

fn json_to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.into_any()
            }
        }
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report_to_py<'py, T: serde::Serialize>(
    py: Python<'py>,
    report: &T,
) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(report)
        .map_err(|err| PyValueError::new_err(format!("report serialization: {err}")))?;
    json_to_py(py, &value)
}

/// Undirected simple graph with vertices 0..vertex_count.
#[pyclass(frozen, skip_from_py_object)]
struct Graph {
    inner: graph::Graph,
}

impl Graph {
    fn wrap(inner: graph::Graph) -> Self {
        Graph { inner }
    }
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (vertex_count, edges=Vec::new()))]
    fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        graph::Graph::from_edges(vertex_count, edges)
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn empty(n: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::Empty { n })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::Path { n })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::Cycle { n })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::Complete { n })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn star(leaves: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::Star { leaves })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn complete_bipartite(m: usize, n: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::CompleteBipartite { m, n })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn kary_tree(arity: usize, depth: usize) -> PyResult<Self> {
        graph::build_family(FamilySpec::KaryTree { arity, depth })
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        graph::random_graph(n, p, seed)
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[staticmethod]
    fn random_interval(n: usize, seed: u64) -> Self {
        Graph::wrap(chordal::random_interval_graph(n, seed))
    }

    /// Parses edge list or DIMACS text, detecting the format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let format = io::detect_format(text).map_err(value_error)?;
        io::parse_graph(format, text)
            .map(Graph::wrap)
            .map_err(value_error)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.vertex_count() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn bfs_distances(&self, source: usize) -> PyResult<Vec<Option<usize>>> {
        self.inner.bfs_distances(source).map_err(value_error)
    }

    fn power(&self, k: usize) -> PyResult<Self> {
        graph::power_graph(&self.inner, k)
            .map(Graph::wrap)
            .map_err(value_error)
    }

    fn cartesian_product(&self, other: &Graph) -> PyResult<Self> {
        graph::cartesian_product(&self.inner, &other.inner)
            .map(Graph::wrap)
            .map_err(value_error)
    }

    fn conormal_sum(&self, other: &Graph) -> PyResult<Self> {
        graph::conormal_sum(&self.inner, &other.inner)
            .map(Graph::wrap)
            .map_err(value_error)
    }

    /// Renders edge_list, dimacs or dot text; dot may carry a coloring.
    #[pyo3(signature = (format="edge_list", coloring=None))]
    fn serialize(&self, format: &str, coloring: Option<Vec<usize>>) -> PyResult<String> {
        let format: io::GraphFormat = format.parse().map_err(value_error)?;
        let coloring = coloring.map(coloring_from).transpose()?;
        Ok(io::serialize_graph(format, &self.inner, coloring.as_ref()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }

    fn __richcmp__(&self, other: &Graph, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(PyValueError::new_err("graphs are not ordered")),
        }
    }
}

/// Greedy coloring along the given vertex order (identity if omitted).
#[pyfunction]
#[pyo3(signature = (graph, order=None))]
fn first_fit(graph: &Graph, order: Option<Vec<usize>>) -> PyResult<Vec<usize>> {
    let order = match order {
        Some(values) => VertexOrder::new(values).map_err(value_error)?,
        None => VertexOrder::identity(graph.inner.vertex_count()),
    };
    coloring::first_fit(&graph.inner, &order)
        .map(|c| c.colors().to_vec())
        .map_err(value_error)
}

/// Witness report dict for a coloring: valid, k, witnesses, counterexample.
#[pyfunction]
fn verify<'py>(
    py: Python<'py>,
    graph: &Graph,
    colors: Vec<usize>,
    kind: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = parse_kind(kind)?;
    let coloring = coloring_from(colors)?;
    let report = coloring::verify(&graph.inner, &coloring, kind).map_err(value_error)?;
    report_to_py(py, &report)
}

/// Exact parameter value with its lexicographically smallest certificate.
#[pyfunction]
#[pyo3(signature = (graph, kind, limit=None))]
fn exact_parameter(
    graph: &Graph,
    kind: &str,
    limit: Option<usize>,
) -> PyResult<(usize, Vec<usize>)> {
    let kind = parse_kind(kind)?;
    let limit = limit.unwrap_or_else(|| exact::default_limit(kind));
    let solution =
        exact::exact_parameter_with_limit(&graph.inner, kind, limit).map_err(value_error)?;
    Ok((solution.k, solution.certificate.colors().to_vec()))
}

#[pyfunction]
fn grundy_permutation_oracle(graph: &Graph) -> PyResult<usize> {
    exact::grundy_permutation_oracle(&graph.inner).map_err(value_error)
}

#[pyfunction]
fn exhaustive_assignment_oracle(graph: &Graph, kind: &str) -> PyResult<usize> {
    exact::exhaustive_assignment_oracle(&graph.inner, parse_kind(kind)?).map_err(value_error)
}

/// Dict of cheap bounds: max_degree_plus_one, clique_lower, m_degree.
#[pyfunction]
fn parameter_bounds<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let bounds = coloring::parameter_bounds(&graph.inner).map_err(value_error)?;
    report_to_py(py, &bounds)
}

/// Binomial tree with grundy number exactly k, and its canonical coloring.
#[pyfunction]
#[pyo3(signature = (k, limit=None))]
fn binomial_tree(k: usize, limit: Option<usize>) -> PyResult<(Graph, Vec<usize>)> {
    let limit = limit.unwrap_or(exact::DEFAULT_LIMIT);
    let (tree, coloring) = exact::binomial_tree_with_limit(k, limit).map_err(value_error)?;
    Ok((Graph::wrap(tree), coloring.colors().to_vec()))
}

#[pyfunction]
fn lex_bfs(graph: &Graph) -> Vec<usize> {
    chordal::lex_bfs(&graph.inner).as_slice().to_vec()
}

/// {"chordal": True, "order": [...], "later_neighborhoods": [...]} or
/// {"chordal": False, "vertex": v, "missing_edge": (u, w)}.
#[pyfunction]
fn perfect_elimination_order<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let dict = PyDict::new(py);
    match chordal::perfect_elimination_order(&graph.inner) {
        Ok(order) => {
            dict.set_item("chordal", true)?;
            dict.set_item("order", order.order)?;
            dict.set_item("later_neighborhoods", order.later_neighborhoods)?;
        }
        Err(cert) => {
            dict.set_item("chordal", false)?;
            dict.set_item("vertex", cert.vertex)?;
            dict.set_item("missing_edge", cert.missing_edge)?;
        }
    }
    Ok(dict.into_any())
}

/// {"colors": [...], "omega": int, "grundy_valid": bool} for chordal input.
#[pyfunction]
fn chordal_color<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let colored = chordal::chordal_color(&graph.inner).map_err(value_error)?;
    let dict = PyDict::new(py);
    dict.set_item("colors", colored.coloring.colors())?;
    dict.set_item("k", colored.coloring.k())?;
    dict.set_item("omega", colored.omega)?;
    dict.set_item("grundy_valid", colored.grundy_valid)?;
    Ok(dict.into_any())
}

/// Runs a scenario from its JSON text; returns the outcome as a dict with
/// trace rows, final state, fixpoint report, and the trace in CSV form.
#[pyfunction]
fn run_scenario<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let scenario = sim::Scenario::from_json(text).map_err(value_error)?;
    let outcome = sim::run(&scenario).map_err(value_error)?;
    let report = report_to_py(py, &outcome)?;
    let dict = report.cast_into::<PyDict>().map_err(PyErr::from)?;
    dict.set_item("rounds", outcome.trace.len())?;
    dict.set_item("trace_csv", sim::trace_csv(&outcome.trace))?;
    Ok(dict.into_any())
}

#[pymodule]
fn grundykit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(first_fit, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(exact_parameter, m)?)?;
    m.add_function(wrap_pyfunction!(grundy_permutation_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_assignment_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(parameter_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_tree, m)?)?;
    m.add_function(wrap_pyfunction!(lex_bfs, m)?)?;
    m.add_function(wrap_pyfunction!(perfect_elimination_order, m)?)?;
    m.add_function(wrap_pyfunction!(chordal_color, m)?)?;
    m.add_function(wrap_pyfunction!(run_scenario, m)?)?;
    Ok(())
}
