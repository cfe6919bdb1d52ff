//! Python bindings: configuration classes and the closed-form, oracle and
//! Fisher-information routines of `interfero-core`.

use interfero_core::fisher;
use interfero_core::homi;
use interfero_core::msi;
use interfero_core::mzi_noon;
use interfero_core::oracle;
use interfero_core::validation::{run_validation as run_checks, ToleranceProfile};
use interfero_core::{QuadratureSpec, SingleSpectrumConfig, SlitConfig, SpectralModeConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn err(e: interfero_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Multi-mode Gaussian joint spectrum (HOM and NOON).
#[pyclass(name = "SpectralModeConfig", module = "interfero", frozen)]
struct PySpectral(SpectralModeConfig);

#[pymethods]
impl PySpectral {
    #[new]
    #[pyo3(signature = (n_modes, mode_spacing, mode_width, center_frequency = 0.0))]
    fn new(n_modes: u32, mode_spacing: f64, mode_width: f64, center_frequency: f64) -> PyResult<Self> {
        SpectralModeConfig::new(n_modes, mode_spacing, mode_width, center_frequency).map(Self).map_err(err)
    }

    #[getter]
    fn n_modes(&self) -> u32 {
        self.0.n_modes
    }

    #[getter]
    fn mode_spacing(&self) -> f64 {
        self.0.mode_spacing
    }

    #[getter]
    fn mode_width(&self) -> f64 {
        self.0.mode_width
    }

    #[getter]
    fn center_frequency(&self) -> f64 {
        self.0.center_frequency
    }

    fn well_separated(&self) -> bool {
        self.0.well_separated()
    }

    fn __repr__(&self) -> String {
        let c = &self.0;
        format!(
            "SpectralModeConfig(n_modes={}, mode_spacing={}, mode_width={}, center_frequency={})",
            c.n_modes, c.mode_spacing, c.mode_width, c.center_frequency
        )
    }
}

/// Multi-mode single-photon spectrum (MZI).
#[pyclass(name = "SingleSpectrumConfig", module = "interfero", frozen)]
struct PySingle(SingleSpectrumConfig);

#[pymethods]
impl PySingle {
    #[new]
    #[pyo3(signature = (n_modes, mode_spacing, mode_width, center_frequency = mzi_noon::DEFAULT_CARRIER))]
    fn new(n_modes: u32, mode_spacing: f64, mode_width: f64, center_frequency: f64) -> PyResult<Self> {
        SingleSpectrumConfig::new(n_modes, mode_spacing, mode_width, center_frequency).map(Self).map_err(err)
    }

    #[getter]
    fn n_modes(&self) -> u32 {
        self.0.n_modes
    }

    #[getter]
    fn mode_spacing(&self) -> f64 {
        self.0.mode_spacing
    }

    #[getter]
    fn mode_width(&self) -> f64 {
        self.0.mode_width
    }

    #[getter]
    fn center_frequency(&self) -> f64 {
        self.0.center_frequency
    }

    fn __repr__(&self) -> String {
        let c = &self.0;
        format!(
            "SingleSpectrumConfig(n_modes={}, mode_spacing={}, mode_width={}, center_frequency={})",
            c.n_modes, c.mode_spacing, c.mode_width, c.center_frequency
        )
    }
}

/// N identical slits of width `slit_width` and pitch `slit_pitch` (m).
#[pyclass(name = "SlitConfig", module = "interfero", frozen)]
struct PySlits(SlitConfig);

#[pymethods]
impl PySlits {
    #[new]
    #[pyo3(signature = (n_slits, slit_width, slit_pitch, wavelength = SlitConfig::DEFAULT_WAVELENGTH))]
    fn new(n_slits: u32, slit_width: f64, slit_pitch: f64, wavelength: f64) -> PyResult<Self> {
        SlitConfig::new(n_slits, slit_width, slit_pitch, wavelength).map(Self).map_err(err)
    }

    #[getter]
    fn n_slits(&self) -> u32 {
        self.0.n_slits
    }

    #[getter]
    fn slit_width(&self) -> f64 {
        self.0.slit_width
    }

    #[getter]
    fn slit_pitch(&self) -> f64 {
        self.0.slit_pitch
    }

    #[getter]
    fn wavelength(&self) -> f64 {
        self.0.wavelength
    }

    fn __repr__(&self) -> String {
        let c = &self.0;
        format!(
            "SlitConfig(n_slits={}, slit_width={}, slit_pitch={}, wavelength={})",
            c.n_slits, c.slit_width, c.slit_pitch, c.wavelength
        )
    }
}

type Curve = (Vec<f64>, Vec<f64>);

fn split(curve: interfero_core::PatternCurve) -> Curve {
    (curve.abscissa, curve.values)
}

fn quadrature(points_per_mode: usize, truncation_sigmas: f64, rel_tolerance: f64) -> QuadratureSpec {
    QuadratureSpec { truncation_sigmas, points_per_mode, rel_tolerance }
}

/// `sin(Nx)/sin(x)` with its removable singularities filled in.
#[pyfunction]
fn details_factor(n_modes: u32, x: f64) -> PyResult<f64> {
    if n_modes == 0 {
        return Err(PyValueError::new_err("n_modes must be at least 1"));
    }
    Ok(interfero_core::details_factor(n_modes, x))
}

#[pyfunction]
fn homi_probability(config: PyRef<'_, PySpectral>, tau: f64) -> f64 {
    homi::homi_probability(&config.0, tau).probability
}

#[pyfunction]
fn homi_pattern(config: PyRef<'_, PySpectral>, tau_min: f64, tau_max: f64, n_samples: usize) -> PyResult<Curve> {
    homi::homi_pattern(&config.0, tau_min, tau_max, n_samples).map(split).map_err(err)
}

#[pyfunction]
fn msi_intensity(config: PyRef<'_, PySlits>, sin_theta: f64) -> PyResult<f64> {
    msi::msi_intensity(&config.0, sin_theta).map(|p| p.intensity).map_err(err)
}

#[pyfunction]
fn msi_pattern(config: PyRef<'_, PySlits>, sin_theta_min: f64, sin_theta_max: f64, n_samples: usize) -> PyResult<Curve> {
    msi::msi_pattern(&config.0, sin_theta_min, sin_theta_max, n_samples).map(split).map_err(err)
}

#[pyfunction]
fn mzi_probability(config: PyRef<'_, PySingle>, tau: f64) -> f64 {
    mzi_noon::mzi_probability(&config.0, tau)
}

#[pyfunction]
fn mzi_pattern(config: PyRef<'_, PySingle>, tau_min: f64, tau_max: f64, n_samples: usize) -> PyResult<Curve> {
    mzi_noon::mzi_pattern(&config.0, tau_min, tau_max, n_samples).map(split).map_err(err)
}

#[pyfunction]
fn noon_probability(config: PyRef<'_, PySpectral>, tau: f64) -> f64 {
    mzi_noon::noon_probability(&config.0, tau)
}

#[pyfunction]
fn noon_pattern(config: PyRef<'_, PySpectral>, tau_min: f64, tau_max: f64, n_samples: usize) -> PyResult<Curve> {
    mzi_noon::noon_pattern(&config.0, tau_min, tau_max, n_samples).map(split).map_err(err)
}

/// Coincidence probability by direct quadrature of the full JSA.
#[pyfunction]
#[pyo3(signature = (config, taus, points_per_mode = 64, truncation_sigmas = 8.0, rel_tolerance = 1e-8))]
fn coincidence_numeric(
    py: Python<'_>,
    config: PyRef<'_, PySpectral>,
    taus: Vec<f64>,
    points_per_mode: usize,
    truncation_sigmas: f64,
    rel_tolerance: f64,
) -> PyResult<Vec<f64>> {
    let spec = quadrature(points_per_mode, truncation_sigmas, rel_tolerance);
    let jsa = oracle::GaussianJsa { config: config.0, correlation: interfero_core::Correlation::AntiCorrelated };
    py.detach(|| oracle::JointOracle::coincidence(jsa, spec)?.probabilities(&taus)).map_err(err)
}

#[pyfunction]
fn cross_term_weight(py: Python<'_>, config: PyRef<'_, PySpectral>) -> PyResult<f64> {
    let c = config.0;
    py.detach(|| oracle::cross_term_weight(&c)).map_err(err)
}

#[pyfunction]
fn fisher_information(config: PyRef<'_, PySpectral>, tau: f64) -> f64 {
    fisher::fisher_closed_form(&config.0, tau)
}

#[pyfunction]
fn fisher_curve(config: PyRef<'_, PySpectral>, taus: Vec<f64>) -> Vec<f64> {
    fisher::fisher_curve(&config.0, &taus).fi_values
}

/// `(tau_star, fi_max)` over the default search window.
#[pyfunction]
fn max_fisher(config: PyRef<'_, PySpectral>) -> PyResult<(f64, f64)> {
    fisher::max_fisher(&config.0, None).map(|m| (m.tau_star, m.fi_max)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (mode_spacing, mode_width, n_min = 1, n_max = 8))]
fn sqrt_fi_vs_n_fit<'py>(
    py: Python<'py>,
    mode_spacing: f64,
    mode_width: f64,
    n_min: u32,
    n_max: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let fit = fisher::sqrt_fi_vs_n_fit(mode_spacing, mode_width, n_min..=n_max).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("points", &fit.points)?;
    d.set_item("slope", fit.slope)?;
    d.set_item("intercept", fit.intercept)?;
    d.set_item("r_squared", fit.r_squared)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (config, true_tau, num_measurements = 10_000, num_trials = 1_000, seed = 0))]
fn crlb_monte_carlo<'py>(
    py: Python<'py>,
    config: PyRef<'_, PySpectral>,
    true_tau: f64,
    num_measurements: usize,
    num_trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let c = config.0;
    let r = py
        .detach(|| fisher::crlb_monte_carlo(&c, true_tau, num_measurements, num_trials, seed))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("true_tau", r.true_tau)?;
    d.set_item("estimator_mean", r.estimator_mean)?;
    d.set_item("estimator_sd", r.estimator_sd)?;
    d.set_item("crlb_sd", r.crlb_sd)?;
    d.set_item("fisher_information", r.fisher_information)?;
    d.set_item("efficiency_ratio", r.efficiency_ratio())?;
    Ok(d)
}

/// The built-in check suite as a list of check dicts.
#[pyfunction]
#[pyo3(signature = (profile = "default"))]
fn run_validation<'py>(py: Python<'py>, profile: &str) -> PyResult<Bound<'py, PyList>> {
    let profile = match profile {
        "default" => ToleranceProfile::Default,
        "strict" => ToleranceProfile::Strict,
        other => return Err(PyValueError::new_err(format!("unknown profile {other:?}"))),
    };
    let report = py.detach(|| run_checks(profile));
    let out = PyList::empty(py);
    for c in report.checks {
        let d = PyDict::new(py);
        d.set_item("check_name", c.check_name)?;
        d.set_item("measured", c.measured)?;
        d.set_item("threshold", c.threshold)?;
        d.set_item("pass", c.pass)?;
        out.append(d)?;
    }
    Ok(out)
}

#[pymodule]
fn interfero(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpectral>()?;
    m.add_class::<PySingle>()?;
    m.add_class::<PySlits>()?;
    m.add_function(wrap_pyfunction!(details_factor, m)?)?;
    m.add_function(wrap_pyfunction!(homi_probability, m)?)?;
    m.add_function(wrap_pyfunction!(homi_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(msi_intensity, m)?)?;
    m.add_function(wrap_pyfunction!(msi_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(mzi_probability, m)?)?;
    m.add_function(wrap_pyfunction!(mzi_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(noon_probability, m)?)?;
    m.add_function(wrap_pyfunction!(noon_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(coincidence_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(cross_term_weight, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_information, m)?)?;
    m.add_function(wrap_pyfunction!(fisher_curve, m)?)?;
    m.add_function(wrap_pyfunction!(max_fisher, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_fi_vs_n_fit, m)?)?;
    m.add_function(wrap_pyfunction!(crlb_monte_carlo, m)?)?;
    m.add_function(wrap_pyfunction!(run_validation, m)?)?;
    Ok(())
}
