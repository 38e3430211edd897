//! Python bindings: `import gaussmix_py`.
//!
//! Photon numbers are mean photon numbers, `tau` is a transmissivity in
//! `[0, 1]`, entropic quantities are in nats unless `bits=True`.

use gaussmix::checks::{self, DEFAULT_SEED};
use gaussmix::measures::{emin_oracle_with, nonclassical_depth, OracleConfig};
use gaussmix::sweeps::{self, SweepSpec};
use gaussmix::{thresholds, Direction, Party};
use nalgebra::Matrix4;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: gaussmix::Error) -> PyErr {
    match e {
        gaussmix::Error::InvalidParameter { .. }
        | gaussmix::Error::InvalidSpec(_)
        | gaussmix::Error::Unphysical { .. }
        | gaussmix::Error::NegativeDiscriminant { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn direction(s: &str) -> PyResult<Direction> {
    match s {
        "1|2" => Ok(Direction::OneGivenTwo),
        "2|1" => Ok(Direction::TwoGivenOne),
        _ => Err(PyValueError::new_err(
            "direction must be \"1|2\" or \"2|1\"",
        )),
    }
}

/// Single-mode Gaussian state with `n_s` squeezed and `n_t` thermal photons.
#[pyclass(frozen, module = "gaussmix_py")]
struct SingleModeState(gaussmix::SingleModeState);

#[pymethods]
impl SingleModeState {
    #[new]
    fn new(n_s: f64, n_t: f64) -> PyResult<Self> {
        gaussmix::SingleModeState::new(n_s, n_t)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn thermal(n_t: f64) -> PyResult<Self> {
        gaussmix::SingleModeState::thermal(n_t)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn squeezed_vacuum(n_s: f64) -> PyResult<Self> {
        gaussmix::SingleModeState::squeezed_vacuum(n_s)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n_s(&self) -> f64 {
        self.0.n_s()
    }

    #[getter]
    fn n_t(&self) -> f64 {
        self.0.n_t()
    }

    /// `n_s + n_t + 2 n_s n_t`.
    #[getter]
    fn total_photons(&self) -> f64 {
        self.0.total_photons()
    }

    #[getter]
    fn purity(&self) -> f64 {
        self.0.purity()
    }

    #[getter]
    fn min_variance(&self) -> f64 {
        self.0.min_variance()
    }

    fn covariance(&self) -> [[f64; 2]; 2] {
        let m = self.0.covariance();
        let m = m.matrix();
        [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
    }

    fn nonclassical_depth(&self) -> f64 {
        nonclassical_depth(&self.0)
    }

    fn p_classical(&self) -> bool {
        gaussmix::p_classical(&self.0)
    }

    /// `(value, tau_star)`: the largest reference photon number that still
    /// leaves the output entangled, maximized over `tau`.
    fn effective_nc(&self) -> PyResult<(f64, f64)> {
        let e = thresholds::effective_nc(&self.0).map_err(err)?;
        Ok((e.value, e.tau_star))
    }

    fn effective_nc_closed_form(&self) -> f64 {
        thresholds::effective_nc_closed_form(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "SingleModeState(n_s={}, n_t={})",
            self.0.n_s(),
            self.0.n_t()
        )
    }
}

/// Local symplectic invariants `det A, det B, det C, det Σ`.
#[pyclass(frozen, module = "gaussmix_py")]
struct Invariants(gaussmix::Invariants);

#[pymethods]
impl Invariants {
    #[new]
    fn new(i1: f64, i2: f64, i3: f64, i4: f64) -> Self {
        Self(gaussmix::Invariants::new(i1, i2, i3, i4))
    }

    #[getter]
    fn i1(&self) -> f64 {
        self.0.i1
    }

    #[getter]
    fn i2(&self) -> f64 {
        self.0.i2
    }

    #[getter]
    fn i3(&self) -> f64 {
        self.0.i3
    }

    #[getter]
    fn i4(&self) -> f64 {
        self.0.i4
    }

    /// `(λ₊, λ₋)`.
    fn symplectic_eigenvalues(&self) -> PyResult<(f64, f64)> {
        self.0.symplectic_eigenvalues().map_err(err)
    }

    /// `(λ̃₊, λ̃₋)` of the partial transpose.
    fn ppt_eigenvalues(&self) -> PyResult<(f64, f64)> {
        self.0.ppt_eigenvalues().map_err(err)
    }

    #[pyo3(signature = (direction = "1|2"))]
    fn discord(&self, direction: &str) -> PyResult<f64> {
        gaussmix::gaussian_discord(&self.0, self::direction(direction)?).map_err(err)
    }

    fn mutual_information(&self) -> PyResult<f64> {
        gaussmix::mutual_information(&self.0).map_err(err)
    }

    fn log_negativity(&self) -> PyResult<f64> {
        gaussmix::log_negativity(&self.0).map_err(err)
    }

    /// Closed-form `min det` of mode 1 conditioned on a Gaussian
    /// measurement of mode 2.
    fn emin(&self) -> f64 {
        gaussmix::emin_closed_form(&self.0)
    }

    fn __repr__(&self) -> String {
        let i = &self.0;
        format!(
            "Invariants(i1={}, i2={}, i3={}, i4={})",
            i.i1, i.i2, i.i3, i.i4
        )
    }
}

/// Two-mode covariance matrix in `(x₁, p₁, x₂, p₂)` order, vacuum = 1/2.
#[pyclass(frozen, module = "gaussmix_py")]
struct CovMat4(gaussmix::CovMat4);

#[pymethods]
impl CovMat4 {
    /// From a 4×4 nested list; rejects asymmetric or unphysical matrices.
    #[new]
    fn new(rows: [[f64; 4]; 4]) -> PyResult<Self> {
        let m = Matrix4::from_fn(|i, j| rows[i][j]);
        gaussmix::CovMat4::new(m).map(Self).map_err(err)
    }

    fn to_list(&self) -> [[f64; 4]; 4] {
        let m = self.0.matrix();
        std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
    }

    fn invariants(&self) -> Invariants {
        Invariants(self.0.invariants())
    }

    fn partial_transpose(&self) -> Self {
        Self(self.0.partial_transpose())
    }

    /// Numerical `min det` over Gaussian measurements on mode `measured`
    /// (1 or 2), with the optimal `(squeeze, angle)`.
    #[pyo3(signature = (measured = 2, grid = 64, tol = 1e-10))]
    fn emin_oracle(&self, measured: u8, grid: usize, tol: f64) -> PyResult<(f64, f64, f64)> {
        let party = match measured {
            1 => Party::First,
            2 => Party::Second,
            _ => return Err(PyValueError::new_err("measured must be 1 or 2")),
        };
        let cfg = OracleConfig {
            grid,
            tol,
            ..OracleConfig::default()
        };
        let r = emin_oracle_with(&self.0, party, &cfg).map_err(err)?;
        Ok((r.emin, r.measurement.squeeze, r.measurement.angle))
    }
}

/// Output covariance after mixing `state` with a thermal mode of `n2`
/// photons at transmissivity `tau`.
#[pyfunction]
fn mix(state: &SingleModeState, n2: f64, tau: f64) -> PyResult<CovMat4> {
    let bs = gaussmix::BeamSplitter::new(tau).map_err(err)?;
    gaussmix::mix(&state.0, n2, &bs).map(CovMat4).map_err(err)
}

/// Invariants of the mixing output, with `det Σ` taken exactly from the
/// input determinants.
#[pyfunction]
fn mix_invariants(state: &SingleModeState, n2: f64, tau: f64) -> PyResult<Invariants> {
    let bs = gaussmix::BeamSplitter::new(tau).map_err(err)?;
    gaussmix::mix_invariants(&state.0, n2, &bs)
        .map(Invariants)
        .map_err(err)
}

/// Every correlation quantifier of the mixing output as a dict.
#[pyfunction]
#[pyo3(signature = (n_s, n_t, n2, tau, bits = false))]
fn measures<'py>(
    py: Python<'py>,
    n_s: f64,
    n_t: f64,
    n2: f64,
    tau: f64,
    bits: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let state = gaussmix::SingleModeState::new(n_s, n_t).map_err(err)?;
    let bs = gaussmix::BeamSplitter::new(tau).map_err(err)?;
    let mut r = gaussmix::MeasureReport::for_mixing(&state, n2, &bs).map_err(err)?;
    if bits {
        r = r.in_bits();
    }
    let d = PyDict::new(py);
    d.set_item("discord_1g2", r.discord_1g2)?;
    d.set_item("discord_2g1", r.discord_2g1)?;
    d.set_item("mutual_info", r.mutual_info)?;
    d.set_item("classical_corr_1g2", r.classical_corr_1g2)?;
    d.set_item("ppt_lambda_minus", r.ppt_lambda_minus)?;
    d.set_item("log_negativity", r.log_negativity)?;
    d.set_item("entangled", r.entangled)?;
    Ok(d)
}

/// Squeezed photons on the P-classicality boundary for `n_t` thermal photons.
#[pyfunction]
fn p_threshold_ns(n_t: f64) -> f64 {
    thresholds::p_threshold_ns(n_t)
}

#[pyfunction]
fn p_threshold_nt(n_s: f64) -> f64 {
    thresholds::p_threshold_nt(n_s)
}

/// Squeezed photons at which the output stops being separable.
#[pyfunction]
fn sep_threshold_ns(n_t: f64, n2: f64, tau: f64) -> PyResult<f64> {
    thresholds::sep_threshold_ns(n_t, n2, tau).map_err(err)
}

/// Runs a sweep described by a JSON spec; returns CSV text, or JSON text
/// when `fmt == "json"`.
#[pyfunction]
#[pyo3(signature = (spec_json, fmt = "csv"))]
fn run_sweep(py: Python<'_>, spec_json: &str, fmt: &str) -> PyResult<String> {
    let spec = SweepSpec::from_json(spec_json).map_err(err)?;
    let table = py.detach(|| sweeps::run(&spec)).map_err(err)?;
    match fmt {
        "csv" => table.to_csv_string().map_err(err),
        "json" => Ok(table.to_json().to_string()),
        _ => Err(PyValueError::new_err("fmt must be \"csv\" or \"json\"")),
    }
}

#[pyfunction]
fn check_names() -> Vec<&'static str> {
    checks::check_names().collect()
}

/// Runs one cross-check; returns `(passed, samples, worst_residual, tolerance)`.
#[pyfunction]
#[pyo3(signature = (name, samples = None, seed = DEFAULT_SEED))]
fn run_check(
    py: Python<'_>,
    name: &str,
    samples: Option<usize>,
    seed: u64,
) -> PyResult<(bool, usize, f64, f64)> {
    let r = py
        .detach(|| checks::run_check(name, samples, seed))
        .map_err(err)?;
    Ok((r.passed, r.samples, r.worst_residual, r.tolerance))
}

#[pymodule]
fn gaussmix_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SingleModeState>()?;
    m.add_class::<Invariants>()?;
    m.add_class::<CovMat4>()?;
    m.add_function(wrap_pyfunction!(mix, m)?)?;
    m.add_function(wrap_pyfunction!(mix_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(measures, m)?)?;
    m.add_function(wrap_pyfunction!(p_threshold_ns, m)?)?;
    m.add_function(wrap_pyfunction!(p_threshold_nt, m)?)?;
    m.add_function(wrap_pyfunction!(sep_threshold_ns, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(check_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
