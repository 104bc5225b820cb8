//! Python bindings. Graphs cross the boundary as graph6/sparse6 text and
//! structured results as JSON strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use snarkcore::certificate::{bundle, verify_bundle, Bundle};
use snarkcore::io;
use snarkcore::measures::{self, MeasureOptions};
use snarkcore::superposition::{build, ConstructionPlan};
use snarkcore::{matchings, Budget, Graph};

fn err(e: snarkcore::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget(nodes: Option<u64>) -> Budget {
    Budget { max_nodes: nodes }
}

/// A bridgeless or bridged cubic (multi)graph.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// Parses graph6, sparse6 or the native text format.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let m = match io::detect(text) {
            Some(io::Format::Native) => io::parse_native(text).and_then(Graph::new),
            _ => io::parse_graph(text),
        };
        m.map(|inner| PyGraph { inner }).map_err(err)
    }

    /// A graph from the built-in catalogue, e.g. "petersen".
    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        snarkcore::named::by_name(name)
            .map(|inner| PyGraph { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown graph {name}")))
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edge_list().to_vec()
    }

    fn girth(&self) -> PyResult<usize> {
        self.inner.girth().map_err(err)
    }

    fn sparse6(&self) -> String {
        io::to_sparse6(&self.inner)
    }

    fn checksum(&self) -> String {
        io::graph_checksum(&self.inner)
    }

    fn perfect_matching_count(&self) -> PyResult<usize> {
        matchings::enumerate_perfect_matchings(&self.inner).map(|p| p.len()).map_err(err)
    }

    fn defect(&self) -> PyResult<usize> {
        matchings::defect(&self.inner).map(|d| d.defect).map_err(err)
    }

    fn oddness(&self) -> PyResult<usize> {
        measures::oddness(&self.inner).map(|o| o.oddness).map_err(err)
    }

    fn density(&self) -> PyResult<usize> {
        measures::density(&self.inner).map(|d| d.density).map_err(err)
    }

    /// `None` when the budget runs out.
    #[pyo3(signature = (budget_nodes=None))]
    fn is_colourable(&self, budget_nodes: Option<u64>) -> PyResult<Option<bool>> {
        let r = snarkcore::colouring::is_colourable(self.inner.multipole(), budget(budget_nodes)).map_err(err)?;
        Ok(match r {
            snarkcore::Outcome::Found(_) => Some(true),
            snarkcore::Outcome::NotFound => Some(false),
            snarkcore::Outcome::Undecided => None,
        })
    }

    /// Full measure report as JSON.
    #[pyo3(signature = (budget_nodes=None))]
    fn measure(&self, budget_nodes: Option<u64>) -> PyResult<String> {
        let opts = MeasureOptions {
            budget: budget(budget_nodes),
            ..MeasureOptions::all()
        };
        let r = measures::measure(&self.inner, &opts).map_err(err)?;
        Ok(serde_json::to_string(&r).expect("report serialises"))
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// Builds the superposition snark of the given girth. Returns the graph
/// and its certificate bundle as JSON.
#[pyfunction]
#[pyo3(signature = (girth, cage=None, seed=0))]
fn build_snark(girth: usize, cage: Option<String>, seed: u64) -> PyResult<(PyGraph, String)> {
    let mut plan = match cage {
        Some(c) => ConstructionPlan::new(girth, c),
        None => ConstructionPlan::for_girth(girth).map_err(err)?,
    };
    plan.seed = seed;
    let c = build(&plan, Budget::unlimited()).map_err(err)?;
    let b = bundle(&c, Budget::unlimited()).map_err(err)?;
    Ok((PyGraph { inner: c.graph }, b.to_json()))
}

/// True iff every certificate in the bundle verifies against the graph.
#[pyfunction]
fn verify(graph: &PyGraph, bundle_json: &str) -> PyResult<bool> {
    let b = Bundle::from_json(bundle_json).map_err(err)?;
    verify_bundle(&graph.inner, &b, Budget::unlimited())
        .map(|r| r.valid())
        .map_err(err)
}

#[pymodule]
fn snarkdefect(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(build_snark, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
