//! Python module `harmodisk`.

use pyo3::exceptions::{PyIOError, PyOverflowError, PyValueError};
use pyo3::prelude::*;

use harmodisk::boundary_data::holder_seminorm_estimate;
use harmodisk::corpus;
use harmodisk::estimates;
use harmodisk::fourier::{self, default_nodes, l1_boundary_norm};
use harmodisk::oracle;
use harmodisk::study;
use harmodisk::{
    BoundaryData, CartesianPoint, DiskGeometry, Error, FourierSpectrum, HarmonicApproximant,
    Seminorm, Smoothness, TaylorExpansion,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        e @ (Error::Overflow(_) | Error::Aliasing { .. }) => PyOverflowError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn geometry(radius: f64) -> PyResult<DiskGeometry> {
    DiskGeometry::new(radius).map_err(py_err)
}

#[pyclass(name = "Boundary", module = "harmodisk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBoundary(BoundaryData);

#[pymethods]
impl PyBoundary {
    /// Built-in closed-form data such as `cos3`, `hat` or `abs_sin_half:0.5`.
    #[staticmethod]
    #[pyo3(signature = (name, radius = 1.0))]
    fn builtin(name: &str, radius: f64) -> PyResult<Self> {
        corpus::builtin(name, geometry(radius)?).map(Self).map_err(py_err)
    }

    /// Uniform samples at `θ_j = −π + 2πj/M`.
    #[staticmethod]
    #[pyo3(signature = (values, radius = 1.0))]
    fn from_samples(values: Vec<f64>, radius: f64) -> PyResult<Self> {
        BoundaryData::from_samples(values, geometry(radius)?).map(Self).map_err(py_err)
    }

    /// Samples at strictly increasing angles in `[−π, π)`.
    #[staticmethod]
    #[pyo3(signature = (thetas, values, radius = 1.0))]
    fn from_points(thetas: Vec<f64>, values: Vec<f64>, radius: f64) -> PyResult<Self> {
        BoundaryData::from_nonuniform_samples(&thetas, &values, geometry(radius)?)
            .map(Self)
            .map_err(py_err)
    }

    /// Sample a Python callable `f(theta)` on a uniform grid.
    #[staticmethod]
    #[pyo3(signature = (f, radius = 1.0, samples = 4096))]
    fn from_function(f: &Bound<'_, PyAny>, radius: f64, samples: usize) -> PyResult<Self> {
        let values = (0..samples)
            .map(|j| f.call1((harmodisk::boundary_data::grid_angle(j, samples),))?.extract::<f64>())
            .collect::<PyResult<Vec<f64>>>()?;
        Self::from_samples(values, radius)
    }

    /// Declare the regularity class `C^{k,α}` with an optional seminorm.
    #[pyo3(signature = (k, alpha, seminorm = None))]
    fn with_smoothness(&self, k: u32, alpha: f64, seminorm: Option<f64>) -> PyResult<Self> {
        let s = Smoothness::new(k, alpha, seminorm).map_err(py_err)?;
        Ok(Self(self.0.clone().with_smoothness(s)))
    }

    fn eval(&self, theta: f64) -> f64 {
        self.0.eval(theta)
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.0.radius()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    #[getter]
    fn is_periodic(&self) -> bool {
        self.0.is_periodic()
    }

    #[pyo3(signature = (alpha, grid = 2048))]
    fn holder_seminorm(&self, alpha: f64, grid: usize) -> PyResult<f64> {
        holder_seminorm_estimate(&self.0, alpha, grid).map_err(py_err)
    }

    /// `∫|f| dθ` by the trapezoidal rule.
    #[pyo3(signature = (nodes = 4096))]
    fn l1_norm(&self, nodes: usize) -> PyResult<f64> {
        l1_boundary_norm(&self.0, nodes).map(|l| l.angular).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Boundary({:?}, R={})", self.0.label(), self.0.radius())
    }
}

#[pyclass(name = "Spectrum", module = "harmodisk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpectrum(FourierSpectrum);

#[pymethods]
impl PySpectrum {
    #[staticmethod]
    #[pyo3(signature = (boundary, n, nodes = None))]
    fn compute(boundary: &PyBoundary, n: usize, nodes: Option<usize>) -> PyResult<Self> {
        fourier::compute_spectrum(&boundary.0, n, nodes.unwrap_or_else(|| default_nodes(n)))
            .map(Self)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FourierSpectrum::from_json(text).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(py_err)
    }

    fn truncated(&self, n: usize) -> PyResult<Self> {
        self.0.truncated(n).map(Self).map_err(py_err)
    }

    /// Cosine coefficients `a_0..a_n`.
    #[getter]
    fn a(&self) -> Vec<f64> {
        self.0.a().to_vec()
    }

    /// Sine coefficients `b_1..b_n`.
    #[getter]
    fn b(&self) -> Vec<f64> {
        self.0.b().to_vec()
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.0.n_max()
    }

    #[getter]
    fn nodes(&self) -> usize {
        self.0.nodes()
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.0.radius()
    }

    #[getter]
    fn center_value(&self) -> f64 {
        self.0.center_value()
    }

    fn __repr__(&self) -> String {
        format!("Spectrum(n_max={}, R={}, M={})", self.0.n_max(), self.0.radius(), self.0.nodes())
    }
}

#[pyclass(name = "Approximant", module = "harmodisk", frozen)]
struct PyApproximant(HarmonicApproximant);

#[pymethods]
impl PyApproximant {
    #[new]
    fn new(spectrum: &PySpectrum) -> Self {
        Self(HarmonicApproximant::new(spectrum.0.clone()))
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn spectrum(&self) -> PySpectrum {
        PySpectrum(self.0.spectrum().clone())
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        self.0.eval(CartesianPoint::new(x, y))
    }

    fn eval_many(&self, py: Python<'_>, points: Vec<(f64, f64)>) -> Vec<f64> {
        let pts: Vec<CartesianPoint> = points.into_iter().map(|(x, y)| CartesianPoint::new(x, y)).collect();
        py.detach(|| self.0.eval_batch(&pts))
    }

    fn derivative(&self, x: f64, y: f64, alpha1: u32, alpha2: u32) -> PyResult<f64> {
        self.0
            .eval_derivative(CartesianPoint::new(x, y), alpha1, alpha2)
            .map_err(py_err)
    }

    /// Nonzero `(i, j, coef)` of `Σ coef x^i y^j`.
    fn monomials(&self) -> PyResult<Vec<(usize, usize, f64)>> {
        Ok(self.0.monomial_expansion().map_err(py_err)?.nonzero().collect())
    }

    #[pyo3(signature = (x0, y0, order = 12))]
    fn taylor(&self, x0: f64, y0: f64, order: usize) -> PyResult<PyTaylor> {
        harmodisk::expand(&self.0, CartesianPoint::new(x0, y0), order)
            .map(PyTaylor)
            .map_err(py_err)
    }
}

#[pyclass(name = "Taylor", module = "harmodisk", frozen)]
struct PyTaylor(TaylorExpansion);

#[pymethods]
impl PyTaylor {
    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn inner_radius(&self) -> f64 {
        self.0.inner_radius()
    }

    fn coef(&self, alpha1: usize, alpha2: usize) -> f64 {
        self.0.coef(alpha1, alpha2)
    }

    /// `(value, kappa, certificate)`; the certificate is `None` when forced
    /// outside the certified region.
    #[pyo3(signature = (hx, hy, force = false))]
    fn eval(&self, hx: f64, hy: f64, force: bool) -> PyResult<(f64, f64, Option<PyBoundReport>)> {
        let s = self.0.eval_series([hx, hy], force).map_err(py_err)?;
        Ok((s.value, s.kappa, s.remainder.map(PyBoundReport)))
    }
}

#[pyclass(name = "BoundReport", module = "harmodisk", frozen)]
struct PyBoundReport(estimates::BoundReport);

#[pymethods]
impl PyBoundReport {
    #[getter]
    fn value(&self) -> f64 {
        self.0.value
    }

    #[getter]
    fn applicable(&self) -> bool {
        self.0.applicable
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("BoundReport({:?}, value={}, applicable={})", self.0.kind, self.0.value, self.0.applicable)
    }
}

#[pyfunction]
#[pyo3(signature = (seminorm, alpha, n, x, y, radius = 1.0, gamma0 = estimates::DEFAULT_GAMMA))]
fn uniform_error_bound(
    seminorm: f64,
    alpha: f64,
    n: usize,
    x: f64,
    y: f64,
    radius: f64,
    gamma0: f64,
) -> PyResult<PyBoundReport> {
    estimates::uniform_error_bound(Seminorm::declared(seminorm), alpha, n, CartesianPoint::new(x, y), radius, gamma0)
        .map(PyBoundReport)
        .map_err(py_err)
}

#[pyfunction]
fn derivative_bound(l1_f: f64, alpha1: u32, alpha2: u32, r: f64, radius: f64) -> PyResult<PyBoundReport> {
    estimates::derivative_bound(l1_f, alpha1, alpha2, r, radius)
        .map(PyBoundReport)
        .map_err(py_err)
}

#[pyfunction]
fn taylor_remainder_bound(kappa: f64, n: usize, inner_radius: f64, l1_u_circle: f64) -> PyResult<PyBoundReport> {
    estimates::taylor_remainder_bound(kappa, n, inner_radius, l1_u_circle)
        .map(PyBoundReport)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (boundary, x, y, nodes = None))]
fn poisson_eval(boundary: &PyBoundary, x: f64, y: f64, nodes: Option<usize>) -> PyResult<f64> {
    oracle::poisson_eval(&boundary.0, CartesianPoint::new(x, y), nodes).map_err(py_err)
}

/// Convergence table as CSV text.
#[pyfunction]
fn run_study(py: Python<'_>, boundary: &PyBoundary, degrees: Vec<usize>, radii: Vec<f64>) -> PyResult<String> {
    let cfg = study::StudyConfig::new(degrees, radii);
    py.detach(|| study::run_study(&boundary.0, &cfg).and_then(|s| s.to_csv()))
        .map_err(py_err)
}

#[pymodule]
#[pyo3(name = "harmodisk")]
fn harmodisk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoundary>()?;
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyApproximant>()?;
    m.add_class::<PyTaylor>()?;
    m.add_class::<PyBoundReport>()?;
    m.add_function(wrap_pyfunction!(uniform_error_bound, m)?)?;
    m.add_function(wrap_pyfunction!(derivative_bound, m)?)?;
    m.add_function(wrap_pyfunction!(taylor_remainder_bound, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_eval, m)?)?;
    m.add_function(wrap_pyfunction!(run_study, m)?)?;
    Ok(())
}
