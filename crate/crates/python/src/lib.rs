//! Python bindings for `qbm_core`.
//!
//! Covariance matrices cross the boundary as 4×4 nested lists in the
//! normalised coordinates (√Ω R₁, P₁/√Ω, √Ω R₂, P₂/√Ω).

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use qbm_core::entanglement::SEPARABILITY_TOL;
use qbm_core::harness::output::emit_csv;
use qbm_core::{CovarianceMatrix, Error};

create_exception!(
    qbm,
    NumericalError,
    PyException,
    "Quadrature or linear-algebra failure."
);

type Rows = [[f64; 4]; 4];

fn to_py(e: Error) -> PyErr {
    if e.is_config() {
        PyValueError::new_err(e.to_string())
    } else {
        NumericalError::new_err(e.to_string())
    }
}

fn covariance(rows: Rows) -> PyResult<CovarianceMatrix> {
    CovarianceMatrix::from_rows(rows).map_err(to_py)
}

#[pyclass(frozen, name = "SystemParams", module = "qbm")]
struct PySystemParams(qbm_core::SystemParams);

#[pymethods]
impl PySystemParams {
    #[new]
    #[pyo3(signature = (omega = 1.0, gamma = 0.1, lambda_cutoff = 50.0, temperature = 0.0))]
    fn new(omega: f64, gamma: f64, lambda_cutoff: f64, temperature: f64) -> PyResult<Self> {
        qbm_core::SystemParams::new(omega, gamma, lambda_cutoff, temperature)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega()
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }

    #[getter]
    fn lambda_cutoff(&self) -> f64 {
        self.0.cutoff()
    }

    #[getter]
    fn temperature(&self) -> f64 {
        self.0.temperature()
    }

    #[getter]
    fn damped_frequency(&self) -> f64 {
        self.0.damped_frequency()
    }

    fn __repr__(&self) -> String {
        format!(
            "SystemParams(omega={}, gamma={}, lambda_cutoff={}, temperature={})",
            self.0.omega(),
            self.0.gamma(),
            self.0.cutoff(),
            self.0.temperature()
        )
    }
}

#[pyclass(frozen, get_all, name = "EntanglementReport", module = "qbm")]
struct PyReport {
    time: f64,
    zeta_minus: f64,
    lambda_minus: f64,
    negativity: f64,
    log_negativity: f64,
    separable: bool,
    uncertainty_ok: bool,
}

impl From<&qbm_core::EntanglementReport> for PyReport {
    fn from(r: &qbm_core::EntanglementReport) -> Self {
        Self {
            time: r.time,
            zeta_minus: r.zeta_minus,
            lambda_minus: r.lambda_minus,
            negativity: r.negativity,
            log_negativity: r.log_negativity,
            separable: r.separable,
            uncertainty_ok: r.uncertainty_ok,
        }
    }
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "EntanglementReport(time={}, zeta_minus={}, lambda_minus={}, negativity={}, separable={})",
            self.time, self.zeta_minus, self.lambda_minus, self.negativity, self.separable
        )
    }
}

#[pyclass(frozen, name = "SweepResult", module = "qbm")]
struct PySweepResult(qbm_core::SweepResult);

#[pymethods]
impl PySweepResult {
    #[getter]
    fn reports(&self) -> Vec<PyReport> {
        self.0.reports.iter().map(PyReport::from).collect()
    }

    #[getter]
    fn t_de(&self) -> Option<f64> {
        self.0.t_de
    }

    fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        emit_csv(&self.0.reports, &mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    fn __len__(&self) -> usize {
        self.0.reports.len()
    }
}

#[pyfunction]
fn two_mode_squeezed_covariance(r: f64) -> Rows {
    qbm_core::two_mode_squeezed_covariance(r).to_rows()
}

#[pyfunction]
fn apply_mirror(cov: Rows) -> PyResult<Rows> {
    Ok(qbm_core::apply_mirror(&covariance(cov)?).to_rows())
}

#[pyfunction]
fn evolution_matrix(t: f64, params: &PySystemParams) -> Rows {
    let m = qbm_core::evolution_matrix(t, &params.0);
    std::array::from_fn(|i| std::array::from_fn(|j| m.matrix()[(i, j)]))
}

#[pyfunction]
#[pyo3(signature = (t, params, tol = 1e-8))]
fn sigma_matrix(py: Python<'_>, t: f64, params: &PySystemParams, tol: f64) -> PyResult<Rows> {
    let p = params.0;
    let sigma = py
        .detach(|| qbm_core::sigma_matrix(t, &p, tol))
        .map_err(to_py)?;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| sigma.matrix()[(i, j)])
    }))
}

#[pyfunction]
#[pyo3(signature = (initial, t, params, quad_tol = 1e-8))]
fn evolve_covariance(
    py: Python<'_>,
    initial: Rows,
    t: f64,
    params: &PySystemParams,
    quad_tol: f64,
) -> PyResult<Rows> {
    let initial = covariance(initial)?;
    let p = params.0;
    py.detach(|| qbm_core::evolve_covariance(&initial, t, &p, quad_tol))
        .map(|c| c.to_rows())
        .map_err(to_py)
}

#[pyfunction]
fn symplectic_spectrum(cov: Rows) -> PyResult<(f64, f64)> {
    qbm_core::symplectic_spectrum(&covariance(cov)?).map_err(to_py)
}

#[pyfunction]
fn ppt_spectrum(cov: Rows) -> PyResult<(f64, f64)> {
    qbm_core::ppt_spectrum(&covariance(cov)?).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (cov, tol = SEPARABILITY_TOL))]
fn separability_test(cov: Rows, tol: f64) -> PyResult<bool> {
    qbm_core::separability_test(&covariance(cov)?, tol).map_err(to_py)
}

#[pyfunction]
fn negativity_measures(lambda_minus: f64) -> PyResult<(f64, f64)> {
    qbm_core::negativity_measures(lambda_minus).map_err(to_py)
}

/// Returns `(d, a, b)`.
#[pyfunction]
fn canonical_form(cov: Rows) -> PyResult<(f64, f64, f64)> {
    let f = qbm_core::canonical_form(&covariance(cov)?).map_err(to_py)?;
    Ok((f.d, f.a, f.b))
}

#[pyfunction]
fn analyze(t: f64, cov: Rows) -> PyResult<PyReport> {
    qbm_core::EntanglementReport::analyze(t, &covariance(cov)?)
        .map(|r| PyReport::from(&r))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (params, r, t_start = 0.0, t_end = 1.0, steps = 200, quad_tol = 1e-8))]
fn run_sweep(
    py: Python<'_>,
    params: &PySystemParams,
    r: f64,
    t_start: f64,
    t_end: f64,
    steps: usize,
    quad_tol: f64,
) -> PyResult<PySweepResult> {
    let mut config = qbm_core::SweepConfig::new(params.0, r);
    config.t_start = t_start;
    config.t_end = t_end;
    config.steps = steps;
    config.quad_tol = quad_tol;
    py.detach(|| qbm_core::run_sweep(&config))
        .map(PySweepResult)
        .map_err(to_py)
}

#[pymodule]
fn qbm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PySystemParams>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PySweepResult>()?;
    m.add_function(wrap_pyfunction!(two_mode_squeezed_covariance, m)?)?;
    m.add_function(wrap_pyfunction!(apply_mirror, m)?)?;
    m.add_function(wrap_pyfunction!(evolution_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_covariance, m)?)?;
    m.add_function(wrap_pyfunction!(symplectic_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(ppt_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(separability_test, m)?)?;
    m.add_function(wrap_pyfunction!(negativity_measures, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
