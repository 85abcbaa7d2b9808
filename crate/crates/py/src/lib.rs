//! Python bindings: `import graceful_trees`.
//!
//! Labelings are plain lists of ints, matchings lists of `(a, b)` tuples.
//! Library errors surface as `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use graceful_core::oracle::{self, Constraint, Family, GeneratorSpec, SearchMode, SearchOptions};
use graceful_core::{self as core, Labeling};

type Pairs = Vec<(usize, usize)>;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Tree", module = "graceful_trees", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyTree {
    inner: core::Tree,
}

impl From<core::Tree> for PyTree {
    fn from(inner: core::Tree) -> Self {
        PyTree { inner }
    }
}

#[pymethods]
impl PyTree {
    #[new]
    fn new(n: usize, edges: Pairs) -> PyResult<Self> {
        core::Tree::new(n, edges).map(Into::into).map_err(err)
    }

    /// Parses an edge list or tree JSON; ids are remapped when there is no
    /// "n N" header.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_tree(text).map(|p| p.tree.into()).map_err(err)
    }

    #[staticmethod]
    fn path(n: usize) -> PyResult<Self> {
        core::Tree::path(n).map(Into::into).map_err(err)
    }

    #[staticmethod]
    fn star(leaves: usize) -> PyResult<Self> {
        core::Tree::star(leaves).map(Into::into).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn edges(&self) -> Pairs {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.order() {
            return Err(err(core::Error::VertexOutOfRange { vertex: v, n: self.inner.order() }));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn diameter(&self) -> usize {
        self.inner.diameter()
    }

    #[pyo3(signature = (anchor=None))]
    fn longest_path(&self, anchor: Option<usize>) -> PyResult<Vec<usize>> {
        self.inner.longest_path(anchor).map_err(err)
    }

    /// `(kind, distance)` with kind one of Path, Caterpillar, Lobster, Other.
    fn classify(&self) -> (String, usize) {
        let c = self.inner.classify();
        (format!("{:?}", c.kind), c.distance)
    }

    fn canonical_code(&self) -> String {
        String::from_utf8(self.inner.canonical_code()).expect("code is ASCII")
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("tree serializes")
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// `(ok, violations)` where violations are human-readable strings.
#[pyfunction]
fn verify_graceful(tree: &PyTree, labels: Vec<usize>) -> (bool, Vec<String>) {
    let r = core::verify_graceful(&tree.inner, &Labeling::new(labels));
    (r.ok, r.violations.iter().map(ToString::to_string).collect())
}

#[pyfunction]
fn verify_strongly_graceful(tree: &PyTree, labels: Vec<usize>, pairs: Pairs) -> PyResult<(bool, Vec<String>)> {
    let r = core::verify_strongly_graceful(&tree.inner, &Labeling::new(labels), &core::Matching::new(pairs)).map_err(err)?;
    Ok((r.ok, r.violations.iter().map(ToString::to_string).collect()))
}

#[pyfunction]
fn edge_weights(tree: &PyTree, labels: Vec<usize>) -> PyResult<Vec<usize>> {
    core::edge_weights(&tree.inner, &Labeling::new(labels)).map_err(err)
}

#[pyfunction]
fn complement(labels: Vec<usize>) -> PyResult<Vec<usize>> {
    core::complement(&Labeling::new(labels)).map(Labeling::into_values).map_err(err)
}

/// Graceful labeling of a tree with an almost perfect matching; the
/// uncovered vertex gets `n - 1`.
#[pyfunction]
#[pyo3(signature = (tree, strict=false))]
fn label_apm(tree: &PyTree, strict: bool) -> PyResult<Vec<usize>> {
    core::label_lobster_apm_with(&tree.inner, !strict).map(|r| r.labeling.into_values()).map_err(err)
}

/// `(labels, pairs)`: a strongly graceful labeling and its perfect matching.
#[pyfunction]
fn label_pm(tree: &PyTree) -> PyResult<(Vec<usize>, Pairs)> {
    let (f, m) = core::label_tree_pm_strong(&tree.inner).map_err(err)?;
    Ok((f.into_values(), m.pairs().to_vec()))
}

#[pyfunction]
#[pyo3(signature = (tree, start=None))]
fn rosa(tree: &PyTree, start: Option<usize>) -> PyResult<Vec<usize>> {
    let start = match start {
        Some(s) => s,
        None => tree.inner.longest_path(None).map_err(err)?[0],
    };
    core::rosa_caterpillar(&tree.inner, start).map(Labeling::into_values).map_err(err)
}

#[pyfunction]
fn max_matching(tree: &PyTree) -> Pairs {
    core::max_matching(&tree.inner).pairs().to_vec()
}

#[pyfunction]
fn matching_missing(tree: &PyTree, v: usize) -> PyResult<Pairs> {
    core::matching_missing(&tree.inner, v).map(|m| m.pairs().to_vec()).map_err(err)
}

/// `(contree, groups)`: the quotient tree and the original vertices behind
/// each of its vertices.
#[pyfunction]
fn contract(tree: &PyTree, pairs: Pairs) -> PyResult<(PyTree, Vec<Vec<usize>>)> {
    let c = core::contract(&tree.inner, &core::Matching::new(pairs)).map_err(err)?;
    let groups = c.pair_of.iter().map(core::Group::members).collect();
    Ok((c.contree.into(), groups))
}

#[pyfunction]
fn enumerate_trees(n: usize) -> PyResult<Vec<PyTree>> {
    oracle::enumerate_trees(n).map(|ts| ts.into_iter().map(Into::into).collect()).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (tree, budget=None))]
fn count_graceful(tree: &PyTree, budget: Option<u64>) -> PyResult<u64> {
    let mut opts = SearchOptions::new(SearchMode::Count, Constraint::Graceful);
    opts.node_budget = budget;
    oracle::brute_force(&tree.inner, &opts).map(|o| o.count).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (tree, budget=None))]
fn find_graceful(tree: &PyTree, budget: Option<u64>) -> PyResult<Option<Vec<usize>>> {
    oracle::find_graceful(&tree.inner, budget).map(|f| f.map(Labeling::into_values)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (family, n, seed=0))]
fn generate(family: &str, n: usize, seed: u64) -> PyResult<PyTree> {
    let family: Family = family.parse().map_err(err)?;
    oracle::generate(&GeneratorSpec::new(family, n, seed)).map(Into::into).map_err(err)
}

/// Runs the command-line interface in process: `(exit_code, stdout, diagnostics)`.
#[pyfunction]
#[pyo3(signature = (args, stdin=""))]
fn run_cli(args: Vec<String>, stdin: &str) -> (i32, String, Vec<String>) {
    let argv = std::iter::once("graceful".to_string()).chain(args);
    let r = core::cli::run_with_stdin(argv, &mut std::io::Cursor::new(stdin.as_bytes().to_vec()));
    let out = if r.payload.is_null() { String::new() } else { r.render() };
    (r.exit_code(), out, r.diagnostics)
}

#[pymodule]
fn graceful_trees(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds the classes and functions to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(verify_graceful, m)?)?;
    m.add_function(wrap_pyfunction!(verify_strongly_graceful, m)?)?;
    m.add_function(wrap_pyfunction!(edge_weights, m)?)?;
    m.add_function(wrap_pyfunction!(complement, m)?)?;
    m.add_function(wrap_pyfunction!(label_apm, m)?)?;
    m.add_function(wrap_pyfunction!(label_pm, m)?)?;
    m.add_function(wrap_pyfunction!(rosa, m)?)?;
    m.add_function(wrap_pyfunction!(max_matching, m)?)?;
    m.add_function(wrap_pyfunction!(matching_missing, m)?)?;
    m.add_function(wrap_pyfunction!(contract, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_trees, m)?)?;
    m.add_function(wrap_pyfunction!(count_graceful, m)?)?;
    m.add_function(wrap_pyfunction!(find_graceful, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
