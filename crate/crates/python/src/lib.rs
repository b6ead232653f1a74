//! Python bindings for `commvar-core`.
//!
//! ```python
//! import commvar
//! g = commvar.GroupSpec("SU(2)")
//! commvar.poincare_total(g, [0, 0, 2, 3])   # [4, 4, 6, 8, 2]
//! ```

use pyo3::prelude::*;

pyo3::create_exception!(commvar, CommvarError, pyo3::exceptions::PyException);
pyo3::create_exception!(commvar, CapExceededError, CommvarError);

fn to_py(e: commvar_core::Error) -> PyErr {
    match e {
        commvar_core::Error::CapExceeded { .. } => CapExceededError::new_err(e.to_string()),
        commvar_core::Error::Parse { .. } | commvar_core::Error::Validation { .. } => {
            pyo3::exceptions::PyValueError::new_err(e.to_string())
        }
        _ => CommvarError::new_err(e.to_string()),
    }
}

/// Compact Lie group given as a product of `SU(r)`, `U(q)` and `Sp(k)` factors.
#[pyclass(name = "GroupSpec", module = "commvar", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyGroupSpec {
    inner: commvar_core::GroupSpec,
}

#[pymethods]
impl PyGroupSpec {
    /// Parses strings such as `"SU(2)xU(1)"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Self { inner }).map_err(to_py)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn weyl_order(&self) -> u128 {
        self.inner.weyl_order()
    }

    #[getter]
    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees()
    }

    #[getter]
    fn simply_connected(&self) -> bool {
        self.inner.simply_connected()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GroupSpec('{}')", self.inner)
    }
}

/// One W-orbit on `Hom(A, T)`.
#[pyclass(name = "Orbit", module = "commvar", frozen, get_all)]
pub struct PyOrbit {
    /// Residues of the lex-minimal representative, per generator and factor.
    representative: Vec<Vec<Vec<u32>>>,
    /// Residues are fractions of this denominator.
    denominator: u32,
    orbit_size: u64,
    stabilizer_order: u64,
    centralizer: String,
}

#[pymethods]
impl PyOrbit {
    fn __repr__(&self) -> String {
        format!(
            "Orbit(representative={:?}, denominator={}, orbit_size={}, centralizer='{}')",
            self.representative, self.denominator, self.orbit_size, self.centralizer
        )
    }
}

fn pi(presentation: Vec<u64>) -> commvar_core::PiSpec {
    commvar_core::PiSpec::new(presentation)
}

/// Poincaré polynomial of `Hom(pi, G)` as a coefficient list, lowest degree first.
#[pyfunction]
#[pyo3(signature = (group, presentation, max_states = commvar_core::config::DEFAULT_MAX_STATES))]
fn poincare_total(py: Python<'_>, group: &PyGroupSpec, presentation: Vec<u64>, max_states: u64) -> PyResult<Vec<u64>> {
    let g = group.inner.clone();
    py.detach(|| commvar_core::poincare_total(&g, &pi(presentation), max_states)).map_err(to_py)
}

/// W-orbits on `Hom(A, T)` for the finite group `A = Z/q_1 + ... + Z/q_m`.
#[pyfunction]
#[pyo3(signature = (group, torsion, max_states = commvar_core::config::DEFAULT_MAX_STATES))]
fn orbits(group: &PyGroupSpec, torsion: Vec<u64>, max_states: u64) -> PyResult<Vec<PyOrbit>> {
    let g = &group.inner;
    let table = commvar_core::orbits(g, &torsion, max_states).map_err(to_py)?;
    Ok(table
        .rows
        .iter()
        .map(|r| PyOrbit {
            representative: r.representative.nested(g),
            denominator: r.representative.denominator(),
            orbit_size: r.orbit_size,
            stabilizer_order: r.stabilizer_order,
            centralizer: commvar_core::centralizer_type(&r.representative, g).to_string(),
        })
        .collect())
}

/// Number of W-orbits on `Hom(A, T)` by averaging fixed points.
#[pyfunction]
#[pyo3(signature = (group, torsion, max_states = commvar_core::config::DEFAULT_MAX_STATES))]
fn burnside_count(group: &PyGroupSpec, torsion: Vec<u64>, max_states: u64) -> PyResult<u64> {
    commvar_core::burnside_count(&group.inner, &torsion, max_states).map_err(to_py)
}

/// Stable wedge summands of `Hom(pi, SU(2))` as `{piece: multiplicity}`.
#[pyfunction]
#[pyo3(signature = (group, presentation, max_states = commvar_core::config::DEFAULT_MAX_STATES))]
fn splitting_totals(group: &PyGroupSpec, presentation: Vec<u64>, max_states: u64) -> PyResult<String> {
    let report = commvar_core::splitting_report(&group.inner, &pi(presentation), max_states).map_err(to_py)?;
    match report.totals {
        Some(t) => Ok(t.to_string()),
        None => Err(to_py(commvar_core::Error::UnsupportedGroup(group.inner.to_string()))),
    }
}

/// Runs a full job from a JSON configuration and returns the report text.
#[pyfunction]
#[pyo3(signature = (config, reproducible = true))]
fn report(py: Python<'_>, config: &str, reproducible: bool) -> PyResult<String> {
    let cfg = commvar_core::parse_config(config.as_bytes()).map_err(to_py)?;
    let bytes = py.detach(|| commvar_core::run(&cfg, reproducible)).map_err(to_py)?;
    String::from_utf8(bytes).map_err(|e| CommvarError::new_err(e.to_string()))
}

/// Exact invariants of spaces of commuting elements in classical Lie groups.
#[pymodule]
fn commvar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupSpec>()?;
    m.add_class::<PyOrbit>()?;
    m.add_function(wrap_pyfunction!(poincare_total, m)?)?;
    m.add_function(wrap_pyfunction!(orbits, m)?)?;
    m.add_function(wrap_pyfunction!(burnside_count, m)?)?;
    m.add_function(wrap_pyfunction!(splitting_totals, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add("CommvarError", m.py().get_type::<CommvarError>())?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
