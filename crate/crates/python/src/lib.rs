//! Python module `spartition_py`.
//!
//! Counts and big integers cross the boundary as Python `int`, complex
//! values as `complex`. Domain and pole errors raise `ValueError`; accuracy
//! and resource failures raise `RuntimeError`.

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spartition::pennington::{self, AsymptoticParams};
use spartition::special_fn::Complex;
use spartition::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Domain { .. } | Error::Pole { .. } => PyValueError::new_err(e.to_string()),
        Error::Accuracy { .. } | Error::Resource { .. } => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Term-by-term evaluation of an asymptotic formula for a log-count.
#[pyclass(frozen, name = "Breakdown")]
pub struct Breakdown {
    #[pyo3(get)]
    u: f64,
    #[pyo3(get)]
    w_argument: f64,
    #[pyo3(get)]
    quad_term: f64,
    #[pyo3(get)]
    lin_term: f64,
    #[pyo3(get)]
    bline_term: f64,
    #[pyo3(get)]
    w_value: f64,
    #[pyo3(get)]
    gauss_const: f64,
    #[pyo3(get)]
    h_const: f64,
    #[pyo3(get)]
    total: f64,
}

impl From<pennington::AsymptoticBreakdown> for Breakdown {
    fn from(b: pennington::AsymptoticBreakdown) -> Self {
        Breakdown {
            u: b.u,
            w_argument: b.w_argument,
            quad_term: b.quad_term,
            lin_term: b.lin_term,
            bline_term: b.bline_term,
            w_value: b.w_value,
            gauss_const: b.gauss_const,
            h_const: b.h_const,
            total: b.total,
        }
    }
}

#[pymethods]
impl Breakdown {
    fn __repr__(&self) -> String {
        format!("Breakdown(u={}, total={})", self.u, self.total)
    }
}

/// Numerical constants with their error estimates, as `(value, error)`.
#[pyclass(frozen, name = "Constants")]
pub struct PyConstants {
    #[pyo3(get)]
    alpha: (f64, f64),
    #[pyo3(get)]
    c: (f64, f64),
    #[pyo3(get)]
    tail_integral: (f64, f64),
    #[pyo3(get)]
    h: (f64, f64),
}

#[pymethods]
impl PyConstants {
    fn __repr__(&self) -> String {
        format!(
            "Constants(alpha={}, c={}, tail_integral={}, h={})",
            self.alpha.0, self.c.0, self.tail_integral.0, self.h.0
        )
    }
}

/// Greedy decomposition of `n` into parts `2^k - 1`.
#[pyclass(frozen, name = "SPartition")]
pub struct PySPartition {
    inner: spartition::SPartition,
}

#[pymethods]
impl PySPartition {
    #[getter]
    fn n(&self) -> BigUint {
        self.inner.n.clone()
    }

    /// Exponents `k` of the parts, in descending order.
    #[getter]
    fn exponents(&self) -> Vec<u64> {
        self.inner.exponents.clone()
    }

    fn parts(&self) -> Vec<BigUint> {
        self.inner.parts()
    }

    fn __len__(&self) -> usize {
        self.inner.exponents.len()
    }

    fn __repr__(&self) -> String {
        format!("SPartition(n={}, exponents={:?})", self.inner.n, self.inner.exponents)
    }
}

/// Summary of a scan comparing exact counts with the closed-form bound.
#[pyclass(frozen, name = "AuditSummary")]
pub struct PyAuditSummary {
    #[pyo3(get)]
    n_max: u64,
    #[pyo3(get)]
    first_violation: Option<u64>,
    #[pyo3(get)]
    violations: u64,
    #[pyo3(get)]
    max_ratio: f64,
    #[pyo3(get)]
    max_ratio_n: u64,
    #[pyo3(get)]
    log_ratio_samples: Vec<(u64, f64)>,
    #[pyo3(get)]
    log_ratio_increasing: bool,
    #[pyo3(get)]
    bound_decreases: Vec<u64>,
    #[pyo3(get)]
    convention: &'static str,
}

/// Number of s-partitions of `n`.
#[pyfunction]
fn count(n: u64) -> PyResult<BigUint> {
    let table = spartition::count_s_partitions_table(n).map_err(py_err)?;
    Ok(table.get(n).cloned().unwrap_or_default())
}

/// Counts of s-partitions for `0..=n_max`.
#[pyfunction]
fn count_table(py: Python<'_>, n_max: u64) -> PyResult<Vec<BigUint>> {
    let table = py
        .detach(|| spartition::count_s_partitions_table(n_max))
        .map_err(py_err)?;
    Ok(table.counts().to_vec())
}

/// Counts of binary partitions for `0..=n_max`.
#[pyfunction]
fn binary_count_table(py: Python<'_>, n_max: u64) -> PyResult<Vec<BigUint>> {
    let table = py
        .detach(|| spartition::count_binary_partitions_table(n_max))
        .map_err(py_err)?;
    Ok(table.counts().to_vec())
}

/// Number of s-partitions of all totals below `u`.
#[pyfunction]
fn cumulative_p(u: u64) -> PyResult<BigUint> {
    spartition::cumulative_p(u).map_err(py_err)
}

/// Natural log of a positive integer that may not fit in a float.
#[pyfunction]
fn ln_count(x: BigUint) -> f64 {
    spartition::ln_count(&x)
}

/// Asymptotic estimate of `ln p_s(n)`.
#[pyfunction]
#[pyo3(signature = (n, tol = pennington::DEFAULT_TOL, nu_max = None))]
fn ln_ps(py: Python<'_>, n: u64, tol: f64, nu_max: Option<u32>) -> PyResult<Breakdown> {
    py.detach(|| match nu_max {
        Some(nu) => pennington::theorem1_ln_ps_truncated(n, tol, nu),
        None => pennington::theorem1_ln_ps(n, tol),
    })
    .map(Breakdown::from)
    .map_err(py_err)
}

/// Asymptotic estimate of the log of the cumulative binary partition count.
#[pyfunction]
#[pyo3(signature = (u, tol = pennington::DEFAULT_TOL))]
fn ln_binary(u: f64, tol: f64) -> PyResult<Breakdown> {
    pennington::theorem2_ln_ph(u, &AsymptoticParams::binary(), tol)
        .map(Breakdown::from)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (tol = pennington::DEFAULT_TOL))]
fn constants(py: Python<'_>, tol: f64) -> PyResult<PyConstants> {
    let k = py.detach(|| pennington::Constants::compute(tol)).map_err(py_err)?;
    let pair = |e: pennington::Estimate| (e.value, e.error);
    Ok(PyConstants {
        alpha: pair(k.alpha),
        c: pair(k.c),
        tail_integral: pair(k.tail_integral),
        h: pair(k.h),
    })
}

/// Oscillating term `W(z)` of the s-partition asymptotics.
#[pyfunction]
#[pyo3(signature = (z, nu_max = pennington::W_NU_MAX))]
fn w(z: f64, nu_max: u32) -> PyResult<f64> {
    pennington::w_oscillation(z, nu_max).map_err(py_err)
}

#[pyfunction]
fn sawtooth(x: f64) -> PyResult<f64> {
    pennington::sawtooth_f(x).map_err(py_err)
}

#[pyfunction]
fn gamma(z: Complex) -> PyResult<Complex> {
    spartition::gamma_complex(z).map_err(py_err)
}

#[pyfunction]
fn zeta(s: Complex) -> PyResult<Complex> {
    spartition::zeta_complex(s).map_err(py_err)
}

#[pyfunction]
fn bhatt_bound(n: u64) -> PyResult<BigUint> {
    spartition::bhatt_bound(n).map_err(py_err)
}

/// Scan `1..=n_max` and summarize where the bound fails.
#[pyfunction]
fn bhatt_audit(py: Python<'_>, n_max: u64) -> PyResult<PyAuditSummary> {
    let s = py
        .detach(|| spartition::audit_scan(n_max, |_| {}))
        .map_err(py_err)?;
    Ok(PyAuditSummary {
        n_max: s.n_max,
        first_violation: s.first_violation,
        violations: s.violations,
        max_ratio: s.max_ratio,
        max_ratio_n: s.max_ratio_n,
        log_ratio_samples: s.log_ratio_samples,
        log_ratio_increasing: s.log_ratio_increasing,
        bound_decreases: s.bound_decreases,
        convention: s.convention,
    })
}

#[pyfunction]
fn decompose(n: BigUint) -> PySPartition {
    PySPartition {
        inner: spartition::greedy_decompose(&n),
    }
}

/// `a^n mod m` through the greedy s-partition of `n`.
#[pyfunction]
fn modexp(a: BigUint, n: BigUint, m: BigUint) -> PyResult<BigUint> {
    spartition::modexp_spartition(&a, &n, &m).map_err(py_err)
}

/// `a^n mod m` by plain square-and-multiply.
#[pyfunction]
fn modexp_reference(a: BigUint, n: BigUint, m: BigUint) -> PyResult<BigUint> {
    spartition::modexp_reference(&a, &n, &m).map_err(py_err)
}

#[pymodule]
fn spartition_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Breakdown>()?;
    m.add_class::<PyConstants>()?;
    m.add_class::<PySPartition>()?;
    m.add_class::<PyAuditSummary>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(count_table, m)?)?;
    m.add_function(wrap_pyfunction!(binary_count_table, m)?)?;
    m.add_function(wrap_pyfunction!(cumulative_p, m)?)?;
    m.add_function(wrap_pyfunction!(ln_count, m)?)?;
    m.add_function(wrap_pyfunction!(ln_ps, m)?)?;
    m.add_function(wrap_pyfunction!(ln_binary, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(w, m)?)?;
    m.add_function(wrap_pyfunction!(sawtooth, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(bhatt_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bhatt_audit, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(modexp, m)?)?;
    m.add_function(wrap_pyfunction!(modexp_reference, m)?)?;
    Ok(())
}
