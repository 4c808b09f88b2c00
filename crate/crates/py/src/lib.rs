//! Python bindings. Reports come back as plain dicts and lists (through
//! their JSON form); polynomials are `IntPoly` objects.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use primefeas::bigpoly::{self, IntPoly};
use primefeas::bounds::{BoundConstants, BoundSet, PolySystem};
use primefeas::decide::{phfeas_system, DecideConfig};
use primefeas::density::{SweepConfig, Sweeper};
use primefeas::example::{self, DensityMode};
use primefeas::ideals::{ideal_sweep, NumberFieldCtx};
use primefeas::modp::{self, reduce};
use primefeas::primes::{self, SieveOptions};

fn err(e: primefeas::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Integer polynomial in one variable.
#[pyclass(name = "IntPoly", frozen, eq, from_py_object, module = "pyprimefeas")]
#[derive(Clone, PartialEq)]
struct PyIntPoly {
    inner: IntPoly,
}

#[pymethods]
impl PyIntPoly {
    /// Parse text such as `"3*x^2 - x + 7"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: text.parse().map_err(err)?,
        })
    }

    /// From `[[exponent, "coefficient"], ...]`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: bigpoly::parse_json(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Self {
            inner: IntPoly::from_coeffs(coeffs),
        }
    }

    fn to_json(&self) -> String {
        bigpoly::to_json(&self.inner)
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<u64> {
        self.inner.degree()
    }

    /// `[(exponent, coefficient), ...]`, highest exponent first.
    fn terms(&self) -> Vec<(u64, BigInt)> {
        self.inner.terms().to_vec()
    }

    /// Natural log of the largest absolute coefficient.
    fn height(&self) -> PyResult<f64> {
        self.inner.height().map_err(err)
    }

    fn eval(&self, x: BigInt) -> BigInt {
        self.inner.eval(&x)
    }

    fn derivative(&self) -> Self {
        Self {
            inner: self.inner.derivative(),
        }
    }

    fn __add__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("IntPoly('{}')", self.inner)
    }
}

fn unwrap_polys(fs: &[PyIntPoly]) -> Vec<IntPoly> {
    fs.iter().map(|f| f.inner.clone()).collect()
}

fn wrap(inner: IntPoly) -> PyIntPoly {
    PyIntPoly { inner }
}

#[pyfunction]
fn gcd(a: &PyIntPoly, b: &PyIntPoly) -> PyResult<PyIntPoly> {
    bigpoly::gcd_z(&a.inner, &b.inner).map(wrap).map_err(err)
}

#[pyfunction]
fn squarefree_part(f: &PyIntPoly) -> PyResult<PyIntPoly> {
    bigpoly::squarefree_part(&f.inner).map(wrap).map_err(err)
}

#[pyfunction]
fn resultant(a: &PyIntPoly, b: &PyIntPoly) -> PyResult<BigInt> {
    bigpoly::resultant(&a.inner, &b.inner).map_err(err)
}

#[pyfunction]
fn discriminant(f: &PyIntPoly) -> PyResult<BigInt> {
    bigpoly::discriminant(&f.inner).map_err(err)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    primes::is_prime(n)
}

#[pyfunction]
fn nth_prime(k: u64) -> PyResult<u64> {
    if k == 0 {
        return Err(PyValueError::new_err("nth_prime is 1-indexed"));
    }
    Ok(primes::nth_prime(k))
}

#[pyfunction]
fn primes_up_to(x: u64) -> Vec<u64> {
    primes::primes_up_to(x).collect()
}

/// Distinct roots of `f mod p` in `F_p`.
#[pyfunction]
fn root_count(f: &PyIntPoly, p: u64) -> PyResult<usize> {
    check_modulus(p)?;
    modp::root_count_sparse(&f.inner, p).map_err(err)
}

/// `[(degree, count), ...]` of the irreducible factors of a squarefree `f mod p`.
#[pyfunction]
fn degree_pattern(f: &PyIntPoly, p: u64) -> PyResult<Vec<(usize, usize)>> {
    check_modulus(p)?;
    let d = modp::degree_pattern(&reduce(&f.inner, p).poly).map_err(err)?;
    Ok(d.0)
}

fn check_modulus(p: u64) -> PyResult<()> {
    if primes::is_prime(p) && p < primefeas::arith::MAX_MODULUS {
        Ok(())
    } else {
        Err(PyValueError::new_err(format!("{p} is not a prime below 2^62")))
    }
}

fn constants(items: Option<Vec<(String, String)>>) -> PyResult<BoundConstants> {
    let mut c = BoundConstants::default();
    for (k, v) in items.unwrap_or_default() {
        c.set(&k, &v).map_err(err)?;
    }
    Ok(c)
}

fn system(fs: &[PyIntPoly]) -> PyResult<PolySystem> {
    PolySystem::from_univariate(&unwrap_polys(fs)).map_err(err)
}

/// All bounds for a univariate system, as a dict.
#[pyfunction]
#[pyo3(signature = (polys, constants_=None))]
fn bounds(py: Python<'_>, polys: Vec<PyIntPoly>, constants_: Option<Vec<(String, String)>>) -> PyResult<Py<PyAny>> {
    let b = BoundSet::compute(&system(&polys)?, constants(constants_)?).map_err(err)?;
    to_py(py, &b)
}

/// Exhaustive sweep of the primes up to `x_max`.
#[pyfunction]
#[pyo3(signature = (polys, x_max, checkpoints=None))]
fn density(py: Python<'_>, polys: Vec<PyIntPoly>, x_max: u64, checkpoints: Option<Vec<u64>>) -> PyResult<Py<PyAny>> {
    let cfg = SweepConfig {
        checkpoints: checkpoints.unwrap_or_default(),
        ..SweepConfig::default()
    };
    let fs = unwrap_polys(&polys);
    let r = py
        .detach(|| Sweeper::system(&fs, cfg.resultant_limit).and_then(|s| s.sweep(x_max, &cfg)))
        .map_err(err)?;
    to_py(py, &r)
}

/// Seeded sample of `size` primes among the first `population`.
#[pyfunction]
#[pyo3(signature = (polys, population, size, seed=0))]
fn sample_density(py: Python<'_>, polys: Vec<PyIntPoly>, population: usize, size: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let fs = unwrap_polys(&polys);
    let r = py
        .detach(|| Sweeper::system(&fs, bigpoly::DEFAULT_RESULTANT_LIMIT).and_then(|s| s.sample(population, size, seed)))
        .map_err(err)?;
    to_py(py, &r)
}

/// Prime-ideal counts for `Q[x]/(f)`.
#[pyfunction]
#[pyo3(signature = (f, x_max, checkpoints=None))]
fn ideals(py: Python<'_>, f: &PyIntPoly, x_max: u64, checkpoints: Option<Vec<u64>>) -> PyResult<Py<PyAny>> {
    let f = f.inner.clone();
    let cps = checkpoints.unwrap_or_default();
    let r = py
        .detach(|| NumberFieldCtx::new(&f).and_then(|ctx| ideal_sweep(&ctx, x_max, &cps, &SieveOptions::default())))
        .map_err(err)?;
    to_py(py, &r)
}

/// Verdict dict for a univariate system counted up to `x_cap`.
#[pyfunction]
#[pyo3(signature = (polys, x_cap, constants_=None))]
fn decide(py: Python<'_>, polys: Vec<PyIntPoly>, x_cap: u64, constants_: Option<Vec<(String, String)>>) -> PyResult<Py<PyAny>> {
    let s = system(&polys)?;
    let mut cfg = DecideConfig::new(x_cap);
    cfg.constants = constants(constants_)?;
    let v = py.detach(|| phfeas_system(&s, &cfg)).map_err(err)?;
    to_py(py, &v)
}

/// The embedded two-polynomial example.
#[pyfunction]
fn example_system() -> Vec<PyIntPoly> {
    example::system().into_iter().map(wrap).collect()
}

#[pyfunction]
#[pyo3(signature = (size=example::DEFAULT_SAMPLE, seed=0))]
fn example_density(py: Python<'_>, size: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let r = py
        .detach(|| example::density(DensityMode::Sampled { size, seed }, &SweepConfig::default()))
        .map_err(err)?;
    to_py(py, &r)
}

#[pymodule]
fn pyprimefeas(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntPoly>()?;
    m.add_function(wrap_pyfunction!(gcd, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_part, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(nth_prime, m)?)?;
    m.add_function(wrap_pyfunction!(primes_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(root_count, m)?)?;
    m.add_function(wrap_pyfunction!(degree_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(sample_density, m)?)?;
    m.add_function(wrap_pyfunction!(ideals, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(example_system, m)?)?;
    m.add_function(wrap_pyfunction!(example_density, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PyIntPoly {
        PyIntPoly::new(s).unwrap()
    }

    #[test]
    fn poly_methods() {
        let f = p("x^2 + 1");
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.__repr__(), "IntPoly('x^2 + 1')");
        assert_eq!(f.__mul__(&p("x - 1")).__str__(), "x^3 - x^2 + x - 1");
        assert!(PyIntPoly::from_json(&f.to_json()).unwrap() == f);
        assert_eq!(PyIntPoly::from_coeffs(vec![1.into(), 0.into(), 1.into()]).__str__(), "x^2 + 1");
    }

    #[test]
    fn argument_checks() {
        assert!(check_modulus(7).is_ok());
        assert!(check_modulus(8).is_err());
        assert!(constants(Some(vec![("mrh.C".into(), "3".into())])).is_ok());
        assert!(constants(Some(vec![("bogus".into(), "3".into())])).is_err());
    }

    #[test]
    fn functions_through_the_interpreter() {
        Python::initialize();
        Python::attach(|py| {
            let v = decide(py, vec![p("x - 1"), p("x^2 - 1")], 10_000, None).unwrap();
            let v = v.bind(py);
            assert!(v.get_item("feasible").unwrap().extract::<bool>().unwrap());
            let r = density(py, vec![p("x")], 100, None).unwrap();
            let rows = r.bind(py).get_item("rows").unwrap();
            assert_eq!(rows.len().unwrap(), 2);
        });
    }
}
