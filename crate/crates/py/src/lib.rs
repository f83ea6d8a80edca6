//! Python bindings: abelian groups, tori and root data with a finite Galois action, and the
//! report-producing commands of the `neron` binary.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use neron_core::cli::report::{group_value, local_result_value};
use neron_core::cli::{self as ncli, corpus_entry, parse_mode, Command, Config, InputDocument, RunOptions};
use neron_core::gcoh::tate;
use neron_core::intlat::{cokernel_group, smith_normal_form};
use neron_core::localfield::{local_cohomology, ResidueFieldMode};
use neron_core::reductive::{abelian_cohomology, h1_reductive, is_flasque, pi1, RootDatumModel};
use neron_core::torus::{cocharacters, component_group, reduction_type, TorusModel};
use neron_core::{Error, IntMatrix};

pyo3::create_exception!(neron, InputError, PyValueError);
pyo3::create_exception!(neron, ComputationError, PyRuntimeError);

fn err(e: Error) -> PyErr {
    if e.is_input_error() {
        InputError::new_err(e.to_string())
    } else {
        ComputationError::new_err(e.to_string())
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn mode_arg(mode: &str) -> PyResult<ResidueFieldMode> {
    parse_mode(mode).map_err(err)
}

fn matrix_arg(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    IntMatrix::from_rows(&rows, cols).map_err(err)
}

fn max_order() -> usize {
    Config::default().max_group_order
}

/// A finitely generated abelian group `Z^rank + Z/d_1 + ... + Z/d_k`.
#[pyclass(name = "FgAbGroup", module = "neron", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFgAbGroup(neron_core::FgAbGroup);

#[pymethods]
impl PyFgAbGroup {
    #[new]
    #[pyo3(signature = (rank=0, invariant_factors=Vec::new()))]
    fn new(rank: usize, invariant_factors: Vec<BigInt>) -> PyResult<Self> {
        if invariant_factors.iter().any(|d| *d <= BigInt::from(0)) {
            return Err(InputError::new_err("cyclic orders must be positive"));
        }
        let mut g = neron_core::FgAbGroup::from_cyclic_orders(&invariant_factors);
        g.rank += rank;
        Ok(PyFgAbGroup(g))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<BigInt> {
        self.0.invariant_factors.clone()
    }

    /// None for infinite groups.
    fn order(&self) -> Option<BigInt> {
        self.0.order()
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn torsion(&self) -> Self {
        PyFgAbGroup(self.0.torsion())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FgAbGroup(rank={}, invariant_factors={:?})", self.0.rank, self.0.invariant_factors)
    }
}

fn doc_from(json: &str) -> PyResult<InputDocument> {
    InputDocument::from_json_str(json).map_err(err)
}

fn corpus_doc(name: &str) -> PyResult<InputDocument> {
    corpus_entry(name).ok_or_else(|| InputError::new_err(format!("no corpus entry named '{name}'")))
}

/// A torus over a local field, given by its character lattice with the action of a finite
/// Galois group, an inertia subgroup and optionally a Frobenius.
#[pyclass(name = "Torus", module = "neron", frozen)]
struct PyTorus(TorusModel);

#[pymethods]
impl PyTorus {
    #[staticmethod]
    fn from_json(document: &str) -> PyResult<Self> {
        doc_from(document)?.torus(max_order()).map(PyTorus).map_err(err)
    }

    #[staticmethod]
    fn from_corpus(name: &str) -> PyResult<Self> {
        corpus_doc(name)?.torus(max_order()).map(PyTorus).map_err(err)
    }

    #[staticmethod]
    fn split(rank: usize) -> Self {
        PyTorus(TorusModel::split(rank))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn galois_order(&self) -> usize {
        self.0.galois().order()
    }

    #[getter]
    fn inertia_order(&self) -> usize {
        self.0.inertia().order()
    }

    /// "Multiplicative", "Unipotent" or "Mixed".
    fn reduction_type(&self) -> PyResult<String> {
        reduction_type(&self.0).map(|t| t.to_string()).map_err(err)
    }

    fn component_group(&self) -> PyResult<PyFgAbGroup> {
        component_group(&self.0).map(|c| PyFgAbGroup(c.structure)).map_err(err)
    }

    /// Tate cohomology of the inertia group with coefficients in the character lattice.
    fn inertia_cohomology(&self, degree: i32) -> PyResult<PyFgAbGroup> {
        tate(&self.0.inertia_module(), degree).map(|c| PyFgAbGroup(c.group)).map_err(err)
    }

    /// `H^degree(K, T)` as a dict: an abelian group, `{"divisible_rank": n}`, or
    /// `{"residue_field_cohomology_of": module}`.
    #[pyo3(signature = (degree=1, mode="quasi-finite"))]
    fn local_cohomology<'py>(&self, py: Python<'py>, degree: i32, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let r = local_cohomology(&self.0, mode_arg(mode)?, degree).map_err(err)?;
        to_py(py, &local_result_value(&r.result))
    }

    /// Whether the cocharacter lattice is flasque.
    fn is_flasque(&self) -> PyResult<bool> {
        is_flasque(&cocharacters(&self.0)).map_err(err)
    }
}

/// A reductive group through its root datum: the cocharacter lattice with the Galois action
/// and the coroots.
#[pyclass(name = "RootDatum", module = "neron", frozen)]
struct PyRootDatum(RootDatumModel);

#[pymethods]
impl PyRootDatum {
    #[staticmethod]
    fn from_json(document: &str) -> PyResult<Self> {
        doc_from(document)?.root_datum(max_order()).map(PyRootDatum).map_err(err)
    }

    #[staticmethod]
    fn from_corpus(name: &str) -> PyResult<Self> {
        corpus_doc(name)?.root_datum(max_order()).map(PyRootDatum).map_err(err)
    }

    #[staticmethod]
    fn split_sl(n: usize) -> PyResult<Self> {
        RootDatumModel::split_sl(n).map(PyRootDatum).map_err(err)
    }

    #[staticmethod]
    fn split_gl(n: usize) -> PyResult<Self> {
        RootDatumModel::split_gl(n).map(PyRootDatum).map_err(err)
    }

    #[staticmethod]
    fn split_pgl(n: usize) -> PyResult<Self> {
        RootDatumModel::split_pgl(n).map(PyRootDatum).map_err(err)
    }

    /// The algebraic fundamental group as an abelian group.
    fn pi1(&self) -> PyFgAbGroup {
        PyFgAbGroup(pi1(&self.0).structure())
    }

    fn is_flasque(&self) -> PyResult<bool> {
        is_flasque(self.0.cochar()).map_err(err)
    }

    #[pyo3(signature = (degree=1, mode="quasi-finite"))]
    fn abelian_cohomology<'py>(&self, py: Python<'py>, degree: i32, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let r = abelian_cohomology(&self.0, mode_arg(mode)?, degree).map_err(err)?;
        to_py(py, &local_result_value(&r.result))
    }

    /// `H^1(K, G)` with both quasi-finite routes when available.
    #[pyo3(signature = (mode="quasi-finite"))]
    fn h1<'py>(&self, py: Python<'py>, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let h = h1_reductive(&self.0, mode_arg(mode)?).map_err(err)?;
        let v = serde_json::json!({
            "result": local_result_value(&h.result),
            "one_step": h.one_step.as_ref().map(group_value),
            "two_step": h.two_step.as_ref().map(group_value),
            "routes_agree": h.routes_agree,
        });
        to_py(py, &v)
    }
}

/// `(U, D, V)` with `U * A * V = D`.
#[pyfunction]
#[pyo3(name = "smith_normal_form")]
fn smith_normal_form_of(rows: Vec<Vec<BigInt>>) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let s = smith_normal_form(&matrix_arg(rows)?);
    Ok((s.u.to_rows(), s.d.to_rows(), s.v.to_rows()))
}

/// `Z^rows / (column span)`.
#[pyfunction]
fn cokernel(rows: Vec<Vec<BigInt>>) -> PyResult<PyFgAbGroup> {
    Ok(PyFgAbGroup(cokernel_group(&matrix_arg(rows)?).0))
}

/// Runs a CLI command and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (command, document=None, *, degree=None, mode=None, seed=None, corpus_size=None, name=None))]
#[allow(clippy::too_many_arguments)]
fn run<'py>(
    py: Python<'py>,
    command: &str,
    document: Option<&str>,
    degree: Option<i32>,
    mode: Option<&str>,
    seed: Option<u64>,
    corpus_size: Option<usize>,
    name: Option<String>,
) -> PyResult<Bound<'py, PyAny>> {
    let command: Command = command.parse().map_err(err)?;
    let doc = document.map(doc_from).transpose()?;
    if command.needs_input() && doc.is_none() {
        return Err(InputError::new_err(format!("{command} needs a document")));
    }
    let mut config = Config::default();
    if let Some(s) = seed {
        config.seed = s;
    }
    if let Some(n) = corpus_size {
        config.corpus_size = n;
    }
    let opts = RunOptions { degree, mode: mode.map(mode_arg).transpose()?, name, timing: false };
    let report = py.detach(|| ncli::run(command, doc.as_ref(), &config, &opts)).map_err(err)?;
    py.import("json")?.call_method1("loads", (report.to_json(false),))
}

#[pyfunction]
fn corpus_names() -> Vec<String> {
    ncli::builtin_corpus().into_iter().map(|d| d.name).collect()
}

#[pyfunction]
fn corpus_document(name: &str) -> PyResult<String> {
    Ok(corpus_doc(name)?.to_value().to_string())
}

#[pymodule]
fn neron(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("InputError", m.py().get_type::<InputError>())?;
    m.add("ComputationError", m.py().get_type::<ComputationError>())?;
    m.add_class::<PyFgAbGroup>()?;
    m.add_class::<PyTorus>()?;
    m.add_class::<PyRootDatum>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form_of, m)?)?;
    m.add_function(wrap_pyfunction!(cokernel, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_document, m)?)?;
    Ok(())
}
