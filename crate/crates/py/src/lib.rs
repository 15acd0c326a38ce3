//! Python bindings. Exact integers cross the boundary as Python `int`;
//! reports come back as plain dicts.

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nacf_core::discrim::{self, DiscriminantReport};
use nacf_core::galois::{self, GaloisConfig, Permutation};
use nacf_core::irred::{self, IrreducibilityCertificate, DEFAULT_PRIME_BUDGET};
use nacf_core::modp::{cycle_type_of, PrimeModulus};
use nacf_core::polyz;
use nacf_core::qfield::{self, RayClassContext};
use nacf_core::roots;
use nacf_core::IntPolynomial;

fn err(e: nacf_core::Error) -> PyErr {
    match e {
        nacf_core::Error::Domain(msg) => PyValueError::new_err(msg),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn debug_name(x: impl std::fmt::Debug) -> String {
    format!("{x:?}")
}

/// Integer polynomial with coefficients in ascending order of degree.
#[pyclass(name = "Polynomial", module = "nacf", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPolynomial {
    inner: IntPolynomial,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(coeffs: Vec<BigInt>) -> Self {
        Self { inner: IntPolynomial::new(coeffs) }
    }

    /// `x^{n-1} + 2x^{n-2} + ... + (n-1)x + n`.
    #[staticmethod]
    fn f1n(n: u64) -> PyResult<Self> {
        Ok(Self { inner: polyz::build_f1n(n).map_err(err)? })
    }

    /// `(x - 1) f_{1,n}`.
    #[staticmethod]
    fn g1n(n: u64) -> PyResult<Self> {
        Ok(Self { inner: polyz::build_g1n(n).map_err(err)? })
    }

    #[staticmethod]
    fn mf1n(m: u64, n: u64) -> PyResult<Self> {
        Ok(Self { inner: polyz::build_mf1n(m, n).map_err(err)? })
    }

    /// Base-`p` digit polynomial of `N` minus `N`, divided by `x - p`.
    #[staticmethod]
    fn fpn(p: u64, n_value: u64) -> PyResult<Self> {
        Ok(Self { inner: polyz::build_fpn(p, n_value).map_err(err)? })
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.inner.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn __call__(&self, x: BigInt) -> BigInt {
        self.inner.eval(&x)
    }

    fn derivative(&self) -> Self {
        Self { inner: self.inner.derivative() }
    }

    fn shift_by_one(&self) -> Self {
        Self { inner: self.inner.shift_by_one() }
    }

    fn discriminant(&self) -> PyResult<BigInt> {
        discrim::discriminant_value(&self.inner).map_err(err)
    }

    /// Factor degrees modulo `p` in decreasing order, `None` if the
    /// reduction is not squarefree or drops degree.
    fn cycle_type(&self, p: u64) -> PyResult<Option<Vec<usize>>> {
        let m = PrimeModulus::new(p).map_err(err)?;
        let t = cycle_type_of(&self.inner, m).map_err(err)?;
        Ok(t.filter(|t| t.squarefree).map(|t| t.degrees))
    }

    #[pyo3(signature = (tol = 1e-9))]
    fn roots(&self, tol: f64) -> PyResult<Vec<Complex64>> {
        let set = roots::solve_roots(&self.inner, tol).map_err(err)?;
        Ok(set.roots.iter().map(|r| r.value()).collect())
    }

    #[pyo3(signature = (prime_budget = DEFAULT_PRIME_BUDGET))]
    fn certify<'py>(&self, py: Python<'py>, prime_budget: usize) -> PyResult<Bound<'py, PyDict>> {
        certificate_dict(py, &irred::certify(&self.inner, prime_budget).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        let c: Vec<String> = self.inner.coeffs().iter().map(|c| c.to_string()).collect();
        format!("Polynomial([{}])", c.join(", "))
    }
}

fn certificate_dict<'py>(py: Python<'py>, c: &IrreducibilityCertificate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("kind", debug_name(c.kind))?;
    d.set_item("verdict", debug_name(c.verdict))?;
    d.set_item("applicable", c.applicable.iter().map(debug_name).collect::<Vec<_>>())?;
    d.set_item("shift_prime", c.shift_prime)?;
    d.set_item("prime_power", c.prime_power)?;
    d.set_item("sieve_primes", c.sieve.as_ref().map(|s| s.primes.clone()))?;
    d.set_item("discriminant", c.discriminant.clone())?;
    d.set_item(
        "rational_root",
        c.rational_root.as_ref().map(|r| (r.numer().clone(), r.denom().clone())),
    )?;
    Ok(d)
}

fn discriminant_dict<'py>(py: Python<'py>, r: &DiscriminantReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("disc", r.disc.clone())?;
    d.set_item("squarefree_part", r.squarefree_part.clone())?;
    d.set_item("quad_field", r.quad_field.clone())?;
    d.set_item("is_square", r.is_square)?;
    let factors: Vec<(BigInt, u32)> =
        r.factorization.factors.iter().map(|(p, e)| (BigInt::from(p.clone()), *e)).collect();
    d.set_item("factors", factors)?;
    d.set_item("factorization_complete", r.factorization_complete)?;
    Ok(d)
}

#[pyfunction]
fn binom_identity_check(n: u64, k: u64) -> bool {
    polyz::binom_identity_check(n, k)
}

/// Closed form of the discriminant of `f_{1,n}`.
#[pyfunction]
fn closed_form_disc_f1n(n: u64) -> PyResult<BigInt> {
    discrim::closed_form_disc_f1n(n).map_err(err)
}

/// Discriminant of `f_{1,n}` (or the `m`-generalization) with its factorization.
#[pyfunction]
#[pyo3(signature = (n, m = None))]
fn discriminant<'py>(py: Python<'py>, n: u64, m: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let f = match m {
        Some(m) => polyz::build_mf1n(m, n),
        None => polyz::build_f1n(n),
    }
    .map_err(err)?;
    discriminant_dict(py, &discrim::discriminant(&f).map_err(err)?)
}

/// Radicand of the quadratic subfield, `None` when the discriminant is a square.
#[pyfunction]
fn quadratic_subfield(n: u64) -> PyResult<Option<BigInt>> {
    Ok(discrim::quadratic_subfield(n).map_err(err)?.radicand)
}

#[pyfunction]
#[pyo3(signature = (n, tol = 1e-9))]
fn check_bounds_f1n<'py>(py: Python<'py>, n: u64, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = roots::check_bounds_f1n(n, tol).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("min_modulus", r.min_modulus)?;
    d.set_item("max_modulus", r.max_modulus)?;
    d.set_item("upper_bound", r.upper_bound)?;
    d.set_item("max_deviation_from_one", r.max_deviation_from_one)?;
    d.set_item("max_radius", r.max_radius)?;
    d.set_item("isolated", r.isolated)?;
    d.set_item("bound_ok", r.bound_ok)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (p, n_value, tol = 1e-9))]
fn check_bounds_fpn<'py>(py: Python<'py>, p: u64, n_value: u64, tol: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = roots::check_bounds_fpn(p, n_value, tol).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("p", r.p)?;
    d.set_item("N", r.n_value)?;
    d.set_item("degree", r.degree)?;
    d.set_item("min_modulus", r.min_modulus)?;
    d.set_item("max_modulus", r.max_modulus)?;
    d.set_item("bound_ok", r.bound_ok)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (n_lo, n_hi, m = None, prime_budget = DEFAULT_PRIME_BUDGET))]
fn conjecture_scan<'py>(
    py: Python<'py>,
    n_lo: u64,
    n_hi: u64,
    m: Option<u64>,
    prime_budget: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = py.detach(|| irred::conjecture_scan(n_lo, n_hi, m, prime_budget)).map_err(err)?;
    rows.iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("n", r.n)?;
            d.set_item("m", r.m)?;
            d.set_item("kind", debug_name(r.kind))?;
            d.set_item("verdict", debug_name(r.verdict))?;
            d.set_item("sieve_primes", r.sieve_primes.clone())?;
            Ok(d)
        })
        .collect()
}

/// Galois group of `f_{1,n}` from Frobenius statistics over primes in `[lo, hi]`.
#[pyfunction]
#[pyo3(signature = (n, lo = 2, hi = 100_000))]
fn classify_galois<'py>(py: Python<'py>, n: u64, lo: u64, hi: u64) -> PyResult<Bound<'py, PyDict>> {
    let v = py.detach(|| galois::classify_galois_with(n, lo, hi, &GaloisConfig::default())).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("degree", v.degree)?;
    d.set_item("kind", debug_name(v.kind))?;
    d.set_item("group", v.group.map(|g| g.to_string()))?;
    d.set_item("group_order", v.group.map(|g| g.order()))?;
    d.set_item("disc_is_square", v.disc_is_square)?;
    d.set_item("transposition_prime", v.transposition_prime)?;
    d.set_item("long_cycle", v.long_cycle)?;
    d.set_item("proof_route", v.proof_route.map(debug_name))?;
    d.set_item("usable_primes", v.usable_primes)?;
    let fits: Vec<(String, f64)> = v.fits.iter().map(|f| (f.group.to_string(), f.total_variation)).collect();
    d.set_item("total_variation", fits)?;
    d.set_item("diagnostic", v.diagnostic)?;
    Ok(d)
}

type Table1Tuple = (u64, String, Option<String>, String, bool);

/// Rows `(n, expected, computed, kind, agree)` for `4 <= n <= 22`.
#[pyfunction]
#[pyo3(signature = (lo = 2, hi = 100_000))]
fn verify_table1(py: Python<'_>, lo: u64, hi: u64) -> PyResult<Vec<Table1Tuple>> {
    let rows = py.detach(|| galois::verify_table1(lo, hi)).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.n, r.expected.to_string(), r.computed.map(|g| g.to_string()), debug_name(r.kind), r.agree))
        .collect())
}

/// Order of the permutation group generated by images lists on `0..d`.
#[pyfunction]
fn group_order(generators: Vec<Vec<usize>>) -> PyResult<usize> {
    let gens = generators.into_iter().map(Permutation::new).collect::<Result<Vec<_>, _>>().map_err(err)?;
    Ok(galois::group_closure(&gens).map_err(err)?.order)
}

/// Class in `Z/3` of the ideal `(a + b sqrt(-2))`.
#[pyfunction]
fn ray_class(a: i64, b: i64) -> PyResult<u8> {
    let ctx = RayClassContext::new().map_err(err)?;
    ctx.class_of_ab(a, b).map_err(err)
}

/// `a(1), ..., a(n_max)` of the theta series.
#[pyfunction]
fn theta_coefficients(n_max: usize) -> PyResult<Vec<i64>> {
    let t = qfield::theta_coefficients(n_max).map_err(err)?;
    (1..=n_max)
        .map(|n| t.a(n).ok_or_else(|| PyRuntimeError::new_err(format!("a({n}) is not an integer"))))
        .collect()
}

#[pyfunction]
fn theorem51<'py>(py: Python<'py>, p_max: u64) -> PyResult<Bound<'py, PyDict>> {
    let r = qfield::theorem51_equivalence(p_max).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("checked", r.checked)?;
    d.set_item("split_primes", r.split_primes)?;
    d.set_item("violations", r.violations.iter().map(|v| v.p).collect::<Vec<_>>())?;
    Ok(d)
}

/// `(a, b, first_mismatch, eta_coeff, theta_coeff)` for each `a + b = 24`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn eta_product_mismatch(n_max: usize) -> PyResult<Vec<(usize, usize, Option<usize>, Option<i64>, Option<i64>)>> {
    let r = qfield::eta_product_mismatch(n_max).map_err(err)?;
    Ok(r.rows.iter().map(|x| (x.a, x.b, x.first_mismatch, x.eta_coeff, x.theta_coeff)).collect())
}

/// Exact arithmetic for the `f_{1,n}` polynomial family.
#[pymodule]
pub fn nacf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(binom_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_disc_f1n, m)?)?;
    m.add_function(wrap_pyfunction!(discriminant, m)?)?;
    m.add_function(wrap_pyfunction!(quadratic_subfield, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds_f1n, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds_fpn, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_scan, m)?)?;
    m.add_function(wrap_pyfunction!(classify_galois, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table1, m)?)?;
    m.add_function(wrap_pyfunction!(group_order, m)?)?;
    m.add_function(wrap_pyfunction!(ray_class, m)?)?;
    m.add_function(wrap_pyfunction!(theta_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(theorem51, m)?)?;
    m.add_function(wrap_pyfunction!(eta_product_mismatch, m)?)?;
    Ok(())
}
