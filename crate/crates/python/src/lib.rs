//! Python bindings: polynomials, algebras, modules, operator checks and the
//! definition-file checker.

use lcakit_core::algebra::{LieConformalAlgebra, Representation};
use lcakit_core::dsl::{self, elaborate::Object, ElabOptions, RunOptions};
use lcakit_core::{catalog, operators, poly, AxiomReport, LambdaValue, ModuleMap, MultiPoly};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A polynomial in d and x1, x2, ... with rational coefficients.
#[pyclass(name = "Poly", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPoly(MultiPoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        dsl::parse_poly(text).map(PyPoly).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPoly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyPoly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPoly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        PyPoly(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn degree(&self) -> u64 {
        self.0.degree()
    }
}

/// Outcome of a family of identity checks.
#[pyclass(name = "Report", frozen)]
struct PyReport(AxiomReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    fn passed_named(&self, name: &str) -> bool {
        self.0.passed_named(name)
    }

    fn summary(&self) -> String {
        self.0.summary()
    }

    /// One dict per check: name, tag, passed, failures, note and witnesses.
    fn checks<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.0
            .checks
            .iter()
            .map(|c| {
                let d = PyDict::new(py);
                d.set_item("name", &c.name)?;
                d.set_item("tag", &c.tag)?;
                d.set_item("passed", c.passed)?;
                d.set_item("failures", c.failures)?;
                d.set_item("note", c.note.clone())?;
                let w: Vec<(Vec<String>, String)> = c
                    .witnesses
                    .iter()
                    .map(|w| (w.tuple.clone(), w.rendered.clone()))
                    .collect();
                d.set_item("witnesses", w)?;
                Ok(d)
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("Report(passed={})", self.0.passed())
    }
}

/// A Lie conformal algebra on a free C[d]-module.
#[pyclass(name = "Algebra", frozen, from_py_object)]
#[derive(Clone)]
struct PyAlgebra(LieConformalAlgebra);

/// Parse `source`, elaborate it and return the object called `name`.
fn object(source: &str, name: &str) -> PyResult<Object> {
    let file = dsl::parse(source).map_err(value_error)?;
    let mut program = dsl::elaborate(&file, &ElabOptions::default()).map_err(value_error)?;
    program
        .objects
        .remove(name)
        .ok_or_else(|| PyValueError::new_err(format!("`{name}` is not declared")))
}

/// Parse a d-only value such as `(d + 1) L - 2 e` over the given generators.
fn module_value(text: &str, names: &[String]) -> PyResult<LambdaValue> {
    let v = dsl::parse_value(text).map_err(value_error)?;
    let mut out = LambdaValue::zero(names.len());
    for t in &v.terms {
        let i = names
            .iter()
            .position(|n| *n == t.generator.name)
            .ok_or_else(|| {
                PyValueError::new_err(format!("unknown generator `{}`", t.generator.name))
            })?;
        *out.coeff_mut(i) += &t.coeff;
    }
    if out.max_var_index() > 0 {
        return Err(PyValueError::new_err(format!("`{text}` may only use d")));
    }
    Ok(out)
}

fn module_map(images: Vec<String>, source_rank: usize, target: &[String]) -> PyResult<ModuleMap> {
    if images.len() != source_rank {
        return Err(PyValueError::new_err(format!(
            "expected {source_rank} images, got {}",
            images.len()
        )));
    }
    let values = images
        .iter()
        .map(|s| module_value(s, target))
        .collect::<PyResult<Vec<_>>>()?;
    ModuleMap::from_images(target.len(), &values).map_err(value_error)
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn virasoro() -> Self {
        PyAlgebra(catalog::virasoro())
    }

    /// The bracket (d + c x1) L; a Lie conformal algebra only for c = 2.
    #[staticmethod]
    fn virasoro_with_weight(c: i64) -> Self {
        PyAlgebra(catalog::virasoro_with_weight(&poly::int(c)))
    }

    #[staticmethod]
    fn current_sl2() -> Self {
        PyAlgebra(catalog::current_sl2())
    }

    /// The algebra declared as `name` in a definition file.
    #[staticmethod]
    fn from_source(source: &str, name: &str) -> PyResult<Self> {
        match object(source, name)? {
            Object::Algebra(a) => Ok(PyAlgebra(a)),
            _ => Err(PyValueError::new_err(format!("`{name}` is not an algebra"))),
        }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    /// [a_x1 b] for generators a, b, rendered.
    fn bracket(&self, a: &str, b: &str) -> PyResult<String> {
        let idx = |g: &str| {
            self.0
                .module
                .index_of(g)
                .ok_or_else(|| PyValueError::new_err(format!("unknown generator `{g}`")))
        };
        let v = self.0.bracket.get(&[idx(a)?, idx(b)?]);
        Ok(v.render(self.0.names()))
    }

    fn check_axioms(&self) -> PyReport {
        PyReport(self.0.check_axioms())
    }

    fn is_lie(&self) -> bool {
        self.0.is_lie()
    }

    /// Nijenhuis identity for the map sending the i-th generator to images[i].
    fn check_nijenhuis(&self, images: Vec<String>) -> PyResult<PyReport> {
        let n = module_map(images, self.0.rank(), self.0.names())?;
        operators::check_nijenhuis(&n, &self.0)
            .map(PyReport)
            .map_err(value_error)
    }

    fn check_reynolds(&self, images: Vec<String>) -> PyResult<PyReport> {
        let r = module_map(images, self.0.rank(), self.0.names())?;
        operators::check_reynolds(&r, &self.0)
            .map(PyReport)
            .map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, rank={})", self.0.module.name, self.0.rank())
    }
}

/// A module over a Lie conformal algebra.
#[pyclass(name = "Module", frozen)]
struct PyRepresentation(Representation);

#[pymethods]
impl PyRepresentation {
    /// M_{delta,alpha} over Vir: [L_x1 v] = (d + alpha + delta x1) v.
    #[staticmethod]
    fn virasoro(delta: i64, alpha: i64) -> Self {
        PyRepresentation(catalog::virasoro_module(
            &poly::int(delta),
            &poly::int(alpha),
        ))
    }

    #[staticmethod]
    fn adjoint(algebra: &PyAlgebra) -> Self {
        PyRepresentation(Representation::adjoint(&algebra.0))
    }

    #[staticmethod]
    fn from_source(source: &str, name: &str) -> PyResult<Self> {
        match object(source, name)? {
            Object::Module { rep, .. } => Ok(PyRepresentation(rep)),
            _ => Err(PyValueError::new_err(format!("`{name}` is not a module"))),
        }
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra(self.0.algebra.clone())
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.space.generators.clone()
    }

    fn check(&self) -> PyReport {
        PyReport(self.0.check_module())
    }

    /// Relative Rota-Baxter identity for T: M -> A given by the images of the
    /// module generators.
    fn check_relative_rb(&self, images: Vec<String>) -> PyResult<PyReport> {
        let t = module_map(images, self.0.space.rank(), self.0.algebra.names())?;
        operators::check_relative_rb(&t, &self.0)
            .map(PyReport)
            .map_err(value_error)
    }
}

/// Run every directive in a definition file and return the JSON report.
#[pyfunction]
#[pyo3(signature = (source, max_arity=4, seed=0, samples=8, max_degree=None, timings=false))]
fn check_source(
    source: &str,
    max_arity: usize,
    seed: u64,
    samples: usize,
    max_degree: Option<u64>,
    timings: bool,
) -> PyResult<String> {
    let elab = ElabOptions { max_degree };
    let run = RunOptions {
        max_arity,
        seed,
        samples,
    };
    let report = dsl::check_source(source, &elab, &run).map_err(value_error)?;
    Ok(report.to_json(timings))
}

/// Canonical text of a definition file.
#[pyfunction]
fn format_source(source: &str) -> PyResult<String> {
    dsl::parse(source)
        .map(|f| dsl::print(&f))
        .map_err(value_error)
}

#[pymodule]
fn lcakit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyRepresentation>()?;
    m.add_function(wrap_pyfunction!(check_source, m)?)?;
    m.add_function(wrap_pyfunction!(format_source, m)?)?;
    Ok(())
}
