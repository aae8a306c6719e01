//! Python bindings. Segment sets cross the boundary as lists of `(a, b)`
//! pairs and polynomials as Chebyshev coefficient lists.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use histopol::experiments::cmd_fit;
use histopol::grid::{self, SegmentKind};
use histopol::histo::{self, MethodDegrees, QuasiDegreeRule, DEFAULT_EVAL_POINTS};
use histopol::oracle::{self, builtin};
use histopol::{AveragesVector, FunctionId, HistoError, Method, Provenance};

fn to_py(e: HistoError) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(format!("{}: {e}", e.kind()))
    }
}

fn segset(pairs: &[(f64, f64)]) -> PyResult<histopol::SegmentSet> {
    histopol::SegmentSet::from_pairs(pairs, SegmentKind::Arbitrary).map_err(to_py)
}

fn pairs(s: &histopol::SegmentSet) -> Vec<(f64, f64)> {
    s.iter().map(|seg| (seg.a, seg.b)).collect()
}

/// A Chebyshev series `sum_k coeffs[k] T_k(x)`.
#[pyclass(name = "ChebPoly", from_py_object)]
#[derive(Clone)]
struct PyChebPoly {
    inner: histopol::ChebPoly,
}

#[pymethods]
impl PyChebPoly {
    #[new]
    fn new(coeffs: Vec<f64>) -> PyResult<Self> {
        if coeffs.is_empty() {
            return Err(PyValueError::new_err("at least one coefficient is required"));
        }
        Ok(Self {
            inner: histopol::ChebPoly::new(coeffs),
        })
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.inner.coeffs.clone()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn __call__(&self, x: f64) -> f64 {
        self.inner.eval(x)
    }

    fn eval_many(&self, xs: Vec<f64>) -> Vec<f64> {
        xs.into_iter().map(|x| self.inner.eval(x)).collect()
    }

    /// Mean over `[a, b]`.
    fn segment_average(&self, a: f64, b: f64) -> PyResult<f64> {
        let s = histopol::Segment::new(a, b).map_err(to_py)?;
        self.inner.segment_average(&s).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("ChebPoly(degree={})", self.inner.degree())
    }
}

/// Result of one approximation method.
#[pyclass(name = "MethodReport", get_all, skip_from_py_object)]
#[derive(Clone)]
struct PyMethodReport {
    method: String,
    coeffs: Vec<f64>,
    cond: f64,
    residual: f64,
    max_error: Option<f64>,
    segments: Vec<(f64, f64)>,
}

#[pymethods]
impl PyMethodReport {
    fn poly(&self) -> PyChebPoly {
        PyChebPoly {
            inner: histopol::ChebPoly::new(self.coeffs.clone()),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "MethodReport(method={}, degree={}, cond={:.3e})",
            self.method,
            self.coeffs.len() - 1,
            self.cond
        )
    }
}

fn function_id(name: &str) -> PyResult<FunctionId> {
    name.parse().map_err(to_py)
}

fn method_id(name: &str) -> PyResult<Method> {
    name.parse().map_err(to_py)
}

fn degrees(m: Option<usize>, quasi_m: Option<&str>) -> PyResult<MethodDegrees> {
    let quasi = match (quasi_m, m) {
        (Some("mock"), _) => QuasiDegreeRule::Mock,
        (Some("max-distinct"), _) => QuasiDegreeRule::MaxDistinct,
        (Some(other), _) => QuasiDegreeRule::Fixed(
            other
                .parse()
                .map_err(|_| PyValueError::new_err(format!("bad quasi_m `{other}`")))?,
        ),
        (None, Some(m)) => QuasiDegreeRule::Fixed(m),
        (None, None) => QuasiDegreeRule::Mock,
    };
    Ok(MethodDegrees {
        concatenated: m,
        quasi,
    })
}

/// The `n` equispaced segments of `[-1, 1]`.
#[pyfunction]
fn equispaced_segments(n: usize) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(&grid::equispaced_segments(n).map_err(to_py)?))
}

#[pyfunction]
fn chebyshev_lobatto_segments(m: usize) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(&grid::chebyshev_lobatto_segments(m).map_err(to_py)?))
}

/// `floor(pi sqrt(n / 2))`
#[pyfunction]
fn max_mock_degree(n: usize) -> PyResult<usize> {
    grid::max_mock_degree(n).map_err(to_py)
}

/// Grid indices of the mock-Chebyshev nodes.
#[pyfunction]
fn mock_chebyshev_indices(n: usize, m: usize) -> PyResult<Vec<usize>> {
    grid::mock_chebyshev_indices(n, m).map_err(to_py)
}

#[pyfunction]
fn concatenated_mock_segments(n: usize, m: usize) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(&grid::concatenated_mock_segments(n, m).map_err(to_py)?))
}

/// Indices of the equispaced segments containing the roots of `T_m`.
#[pyfunction]
fn quasi_nodal_indices(n: usize, m: usize) -> PyResult<Vec<usize>> {
    grid::quasi_nodal_indices(n, m).map_err(to_py)
}

#[pyfunction]
fn quasi_nodal_segments(n: usize, m: usize) -> PyResult<Vec<(f64, f64)>> {
    Ok(pairs(&grid::quasi_nodal_segments(n, m).map_err(to_py)?))
}

/// Value of a built-in test function `f1`..`f6`.
#[pyfunction]
fn test_function(name: &str, x: f64) -> PyResult<f64> {
    Ok(builtin(function_id(name)?).eval(x))
}

/// Means of a built-in test function over the given segments.
#[pyfunction]
fn segment_means(name: &str, segments: Vec<(f64, f64)>) -> PyResult<Vec<f64>> {
    let s = segset(&segments)?;
    Ok(oracle::segment_means(&builtin(function_id(name)?), &s)
        .map_err(to_py)?
        .values)
}

/// The polynomial of degree `len(segments) - 1` with the given means.
#[pyfunction]
fn histopolate(segments: Vec<(f64, f64)>, means: Vec<f64>) -> PyResult<PyChebPoly> {
    let s = segset(&segments)?;
    let h = histo::histopolate_values(&s, &means).map_err(to_py)?;
    Ok(PyChebPoly { inner: h.poly })
}

#[pyfunction]
#[pyo3(signature = (segments, eval_points = DEFAULT_EVAL_POINTS))]
fn lebesgue_constant(segments: Vec<(f64, f64)>, eval_points: usize) -> PyResult<f64> {
    histo::lebesgue_constant(&segset(&segments)?, eval_points).map_err(to_py)
}

/// Runs one method on means over the `len(means)` equispaced segments.
///
/// `method` is one of `full`, `concatenated`, `quasi-nodal`, `constrained`;
/// `quasi_m` is `mock`, `max-distinct` or an integer.
#[pyfunction]
#[pyo3(signature = (method, means, m = None, quasi_m = None, reference = None, grid_points = DEFAULT_EVAL_POINTS))]
fn approximate(
    method: &str,
    means: Vec<f64>,
    m: Option<usize>,
    quasi_m: Option<&str>,
    reference: Option<&str>,
    grid_points: usize,
) -> PyResult<PyMethodReport> {
    let n = means.len();
    let s = grid::equispaced_segments(n).map_err(to_py)?;
    let data = AveragesVector::new(means, s, Provenance::Ingested).map_err(to_py)?;
    let mut r = histo::run_method(method_id(method)?, n, degrees(m, quasi_m)?, &data).map_err(to_py)?;
    if let Some(name) = reference {
        let f = builtin(function_id(name)?);
        let grid = histo::EvalGrid::full(grid_points).map_err(to_py)?;
        r = r.with_max_error(|x| f.eval(x), &grid);
    }
    Ok(PyMethodReport {
        method: r.method.name().into(),
        coeffs: r.poly.coeffs,
        cond: r.cond,
        residual: r.residual,
        max_error: r.max_err,
        segments: pairs(&r.segments),
    })
}

/// Fits a CSV file of averages (`a,b,mean`) and returns the JSON artifact.
#[pyfunction]
#[pyo3(signature = (path, method = "quasi-nodal", m = None, quasi_m = None))]
fn fit_file(path: &str, method: &str, m: Option<usize>, quasi_m: Option<&str>) -> PyResult<String> {
    let (_, data) = oracle::ingest_averages(path).map_err(to_py)?;
    Ok(cmd_fit(&data, method_id(method)?, degrees(m, quasi_m)?)
        .map_err(to_py)?
        .to_json())
}

#[pymodule]
#[pyo3(name = "histopol")]
fn histopol_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChebPoly>()?;
    m.add_class::<PyMethodReport>()?;
    m.add_function(wrap_pyfunction!(equispaced_segments, m)?)?;
    m.add_function(wrap_pyfunction!(chebyshev_lobatto_segments, m)?)?;
    m.add_function(wrap_pyfunction!(max_mock_degree, m)?)?;
    m.add_function(wrap_pyfunction!(mock_chebyshev_indices, m)?)?;
    m.add_function(wrap_pyfunction!(concatenated_mock_segments, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_nodal_indices, m)?)?;
    m.add_function(wrap_pyfunction!(quasi_nodal_segments, m)?)?;
    m.add_function(wrap_pyfunction!(test_function, m)?)?;
    m.add_function(wrap_pyfunction!(segment_means, m)?)?;
    m.add_function(wrap_pyfunction!(histopolate, m)?)?;
    m.add_function(wrap_pyfunction!(lebesgue_constant, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    m.add_function(wrap_pyfunction!(fit_file, m)?)?;
    Ok(())
}
