//! Python bindings for `familydd`.

use familydd::experiments::run_blowup;
use familydd::generators::{gen_base_family, BaseFamilyKind};
use familydd::kernel::DEFAULT_EXPLICIT_CAP;
use familydd::{DiagramManager, ExplicitFamily, OpKind, Semantics, VariableOrder};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: familydd::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse<T: std::str::FromStr<Err = familydd::Error>>(s: &str) -> PyResult<T> {
    s.parse().map_err(err)
}

/// A store of reduced decision diagrams over one ordered universe.
#[pyclass(module = "pyfamilydd")]
pub struct Manager {
    inner: DiagramManager,
}

/// A family of sets held by a `Manager`.
#[pyclass(module = "pyfamilydd", frozen)]
pub struct Family {
    manager: Py<Manager>,
    inner: familydd::Family,
}

fn wrap(py: Python<'_>, manager: &Py<Manager>, inner: familydd::Family) -> Family {
    Family {
        manager: manager.clone_ref(py),
        inner,
    }
}

#[pymethods]
impl Manager {
    #[new]
    #[pyo3(signature = (elements, semantics = "zdd"))]
    fn new(elements: Vec<String>, semantics: &str) -> PyResult<Self> {
        let semantics = match semantics {
            "zdd" => Semantics::Zdd,
            "bdd" => Semantics::Bdd,
            other => return Err(PyValueError::new_err(format!("unknown semantics `{other}`"))),
        };
        let order = VariableOrder::new(elements).map_err(err)?;
        Ok(Manager {
            inner: DiagramManager::new(semantics, order),
        })
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.order().names().to_vec()
    }

    /// Family holding exactly the given sets of element names.
    fn family(slf: Bound<'_, Self>, sets: Vec<Vec<String>>) -> PyResult<Family> {
        let root = {
            let mut m = slf.borrow_mut();
            let explicit = ExplicitFamily::from_named_sets(m.inner.order().names().to_vec(), sets)
                .map_err(err)?;
            m.inner.from_explicit(&explicit).map_err(err)?
        };
        Ok(wrap(slf.py(), &slf.clone().unbind(), root))
    }

    fn powerset(slf: Bound<'_, Self>, elements: Vec<String>) -> PyResult<Family> {
        let root = slf.borrow_mut().inner.powerset(elements).map_err(err)?;
        Ok(wrap(slf.py(), &slf.clone().unbind(), root))
    }

    /// Applies the named operation; `g` is required for binary operations.
    #[pyo3(signature = (op, f, g = None))]
    fn apply(slf: Bound<'_, Self>, op: &str, f: &Family, g: Option<&Family>) -> PyResult<Family> {
        let op: OpKind = parse(op)?;
        let root = slf
            .borrow_mut()
            .inner
            .apply(op, f.inner, g.map(|g| g.inner))
            .map_err(err)?;
        Ok(wrap(slf.py(), &slf.clone().unbind(), root))
    }

    /// Sets `S` avoiding `y` and `y_prime` with `S ∪ y` in `f`.
    fn condition(slf: Bound<'_, Self>, f: &Family, y: Vec<String>, y_prime: Vec<String>) -> PyResult<Family> {
        let root = slf.borrow_mut().inner.condition(f.inner, &y, &y_prime).map_err(err)?;
        Ok(wrap(slf.py(), &slf.clone().unbind(), root))
    }

    /// Copy of `f` in `target`, which must share the element order.
    fn convert(&self, py: Python<'_>, f: &Family, target: &Bound<'_, Manager>) -> PyResult<Family> {
        let root = self
            .inner
            .convert_semantics(f.inner, &mut target.borrow_mut().inner)
            .map_err(err)?;
        Ok(wrap(py, &target.clone().unbind(), root))
    }
}

impl Family {
    fn with<R>(&self, py: Python<'_>, f: impl FnOnce(&DiagramManager) -> familydd::Result<R>) -> PyResult<R> {
        f(&self.manager.borrow(py).inner).map_err(err)
    }

    fn binary(&self, py: Python<'_>, op: OpKind, other: &Family) -> PyResult<Family> {
        let root = self
            .manager
            .borrow_mut(py)
            .inner
            .apply(op, self.inner, Some(other.inner))
            .map_err(err)?;
        Ok(wrap(py, &self.manager, root))
    }
}

#[pymethods]
impl Family {
    fn node_count(&self, py: Python<'_>) -> PyResult<usize> {
        self.with(py, |m| m.node_count(self.inner))
    }

    fn count(&self, py: Python<'_>) -> PyResult<u64> {
        self.with(py, |m| m.count_sets(self.inner))
    }

    /// The member sets as lists of element names.
    #[pyo3(signature = (cap = DEFAULT_EXPLICIT_CAP))]
    fn sets(&self, py: Python<'_>, cap: u64) -> PyResult<Vec<Vec<String>>> {
        let explicit = self.with(py, |m| m.to_explicit(self.inner, cap))?;
        Ok(explicit
            .named_sets()
            .into_iter()
            .map(|s| s.into_iter().map(String::from).collect())
            .collect())
    }

    fn to_dot(&self, py: Python<'_>) -> PyResult<String> {
        self.with(py, |m| m.export_dot(self.inner))
    }

    fn __or__(&self, py: Python<'_>, other: &Family) -> PyResult<Family> {
        self.binary(py, OpKind::Union, other)
    }

    fn __and__(&self, py: Python<'_>, other: &Family) -> PyResult<Family> {
        self.binary(py, OpKind::Intersection, other)
    }

    fn __sub__(&self, py: Python<'_>, other: &Family) -> PyResult<Family> {
        self.binary(py, OpKind::Difference, other)
    }

    fn __xor__(&self, py: Python<'_>, other: &Family) -> PyResult<Family> {
        self.binary(py, OpKind::SymmetricDifference, other)
    }

    fn __eq__(&self, other: &Family) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        self.inner.root().index() as u64
    }

    fn __len__(&self, py: Python<'_>) -> PyResult<usize> {
        Ok(self.count(py)? as usize)
    }

    fn __repr__(&self, py: Python<'_>) -> PyResult<String> {
        Ok(format!(
            "<Family: {} sets, {} nodes>",
            self.count(py)?,
            self.node_count(py)?
        ))
    }
}

/// A generated family in a fresh manager over its default universe.
#[pyfunction]
#[pyo3(signature = (kind, m, k = None, l = None))]
fn base_family(py: Python<'_>, kind: &str, m: usize, k: Option<usize>, l: Option<usize>) -> PyResult<Family> {
    let kind: BaseFamilyKind = parse(kind)?;
    let mut mgr = DiagramManager::zdd(kind.universe(m)).map_err(err)?;
    let root = gen_base_family(&mut mgr, kind, m, k, l).map_err(err)?;
    let manager = Py::new(py, Manager { inner: mgr })?;
    Ok(wrap(py, &manager, root))
}

/// Blow-up sweep with identity checks; one dict per m.
#[pyfunction]
fn blowup<'py>(py: Python<'py>, op: &str, m_min: usize, m_max: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let op: OpKind = parse(op)?;
    let records = py.detach(|| run_blowup(op, m_min, m_max)).map_err(err)?;
    records
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("op", r.op.name())?;
            d.set_item("m", r.m)?;
            d.set_item("z_f", r.z_f)?;
            d.set_item("z_g", r.z_g)?;
            d.set_item("z_out", r.z_out)?;
            d.set_item("count_out", r.count_out)?;
            d.set_item("elapsed_ms", r.elapsed_ms)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn pyfamilydd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Manager>()?;
    m.add_class::<Family>()?;
    m.add_function(wrap_pyfunction!(base_family, m)?)?;
    m.add_function(wrap_pyfunction!(blowup, m)?)?;
    Ok(())
}
