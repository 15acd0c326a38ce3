//! Irreducibility over the integers: theoretical certificates for `f_{1,n}`,
//! the degree-set sieve over Frobenius cycle types, and the family scanner.
//!
//! The sieve is sound but incomplete. If `f = gh` over the integers then for
//! every prime `p` not dividing `lc(f)` the degree of `h` is a subset sum of the
//! factor degrees of `f mod p`. Intersecting these sets over several primes and
//! finding no proper degree left proves irreducibility.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor, is_prime_u64, prime_iter, prime_power};
use crate::discrim::discriminant_value;
use crate::modp::{cycle_type_of, CycleType, PrimeModulus};
use crate::polyz::{build_f1n, build_mf1n, shift_by_one, IntPolynomial};
use crate::{Error, Result};

pub const DEFAULT_PRIME_BUDGET: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CertificateKind {
    /// `f(x+1)` is Eisenstein at `n+1`.
    EisensteinShift,
    /// `n` is prime.
    PrimeN,
    /// `n = p^k` with `k >= 2`.
    PrimePowerN,
    DegreeSetSieve,
    /// Degree two with negative discriminant.
    QuadraticNegativeDisc,
    /// Degree one.
    Linear,
    /// An explicit rational root was found.
    RationalRoot,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SieveWitness {
    /// Primes whose cycle types shrank the candidate set, in the order used.
    pub primes: Vec<u64>,
    pub cycle_types: Vec<CycleType>,
    /// Proper factor degrees not yet excluded.
    pub surviving: Vec<usize>,
    /// Unramified primes examined.
    pub primes_examined: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrreducibilityCertificate {
    pub kind: CertificateKind,
    /// Every theoretical certificate that applies, strongest first.
    pub applicable: Vec<CertificateKind>,
    pub verdict: Verdict,
    /// Eisenstein prime for the shifted polynomial.
    pub shift_prime: Option<u64>,
    /// `(p, k)` with `n = p^k` for the prime and prime-power certificates.
    pub prime_power: Option<(u64, u32)>,
    pub sieve: Option<SieveWitness>,
    pub discriminant: Option<BigInt>,
    pub rational_root: Option<BigRational>,
}

impl IrreducibilityCertificate {
    fn new(kind: CertificateKind, verdict: Verdict) -> Self {
        Self {
            kind,
            applicable: Vec::new(),
            verdict,
            shift_prime: None,
            prime_power: None,
            sieve: None,
            discriminant: None,
            rational_root: None,
        }
    }

    fn unknown() -> Self {
        Self::new(CertificateKind::None, Verdict::Unknown)
    }
}

/// Checks that `f(x+1)` is Eisenstein at `q`.
pub fn is_eisenstein_after_shift(f: &IntPolynomial, q: u64) -> bool {
    let shifted = shift_by_one(f);
    let q = BigInt::from(q);
    let c = shifted.coeffs();
    let Some((lead, rest)) = c.split_last() else { return false };
    !lead.is_multiple_of(&q)
        && rest.iter().all(|a| a.is_multiple_of(&q))
        && !c[0].is_multiple_of(&(&q * &q))
}

/// Certificates for `f_{1,n}` that follow from the shape of `n`.
pub fn theoretical_certificate(n: u64) -> Result<IrreducibilityCertificate> {
    let f = build_f1n(n)?;
    let mut applicable = Vec::new();
    let mut shift_prime = None;
    if is_prime_u64(n + 1) && is_eisenstein_after_shift(&f, n + 1) {
        applicable.push(CertificateKind::EisensteinShift);
        shift_prime = Some(n + 1);
    }
    let pk = prime_power(n);
    match pk {
        Some((_, 1)) => applicable.push(CertificateKind::PrimeN),
        Some(_) => applicable.push(CertificateKind::PrimePowerN),
        None => {}
    }
    let Some(&kind) = applicable.first() else {
        return Ok(IrreducibilityCertificate::unknown());
    };
    Ok(IrreducibilityCertificate {
        applicable,
        shift_prime,
        prime_power: pk,
        ..IrreducibilityCertificate::new(kind, Verdict::Irreducible)
    })
}

fn proper_degrees(reach: &[bool]) -> Vec<usize> {
    let deg = reach.len() - 1;
    (1..deg).filter(|&k| reach[k]).collect()
}

/// Degree-set sieve over the given primes. Primes dividing the leading
/// coefficient or giving a non-squarefree reduction are skipped.
pub fn degree_set_sieve_with_primes(f: &IntPolynomial, primes: &[u64]) -> Result<IrreducibilityCertificate> {
    sieve_impl(f, primes.iter().copied(), primes.len(), usize::MAX)
}

/// Degree-set sieve over the first `prime_budget` unramified primes.
pub fn degree_set_sieve(f: &IntPolynomial, prime_budget: usize) -> Result<IrreducibilityCertificate> {
    let scan_cap = prime_budget.saturating_mul(20).saturating_add(200);
    sieve_impl(f, prime_iter(), prime_budget, scan_cap)
}

fn sieve_impl(
    f: &IntPolynomial,
    primes: impl Iterator<Item = u64>,
    budget: usize,
    scan_cap: usize,
) -> Result<IrreducibilityCertificate> {
    let deg = match f.degree() {
        Some(d) if d >= 2 => d,
        _ => return Err(Error::domain("sieve needs degree >= 2")),
    };
    if !f.content().is_one() {
        return Err(Error::domain("sieve needs a primitive polynomial"));
    }
    let mut reach = vec![true; deg + 1];
    let mut witness = SieveWitness { primes: Vec::new(), cycle_types: Vec::new(), surviving: Vec::new(), primes_examined: 0 };
    for (scanned, p) in primes.enumerate() {
        if witness.primes_examined >= budget || scanned >= scan_cap {
            break;
        }
        let Ok(modulus) = PrimeModulus::new(p) else { continue };
        let Some(ct) = cycle_type_of(f, modulus)? else { continue };
        if !ct.squarefree {
            continue;
        }
        witness.primes_examined += 1;
        let sums = ct.subset_sums();
        let before = proper_degrees(&reach).len();
        for (r, s) in reach.iter_mut().zip(&sums) {
            *r &= *s;
        }
        if proper_degrees(&reach).len() < before {
            witness.primes.push(p);
            witness.cycle_types.push(ct);
        }
        if proper_degrees(&reach).is_empty() {
            break;
        }
    }
    witness.surviving = proper_degrees(&reach);
    let (kind, verdict) = if witness.primes_examined > 0 && witness.surviving.is_empty() {
        (CertificateKind::DegreeSetSieve, Verdict::Irreducible)
    } else {
        (CertificateKind::None, Verdict::Unknown)
    };
    Ok(IrreducibilityCertificate { sieve: Some(witness), ..IrreducibilityCertificate::new(kind, verdict) })
}

/// Re-runs the sieve on exactly the stored primes.
pub fn verify_sieve_witness(f: &IntPolynomial, witness: &SieveWitness) -> Result<bool> {
    let check = degree_set_sieve_with_primes(f, &witness.primes)?;
    Ok(check.verdict == Verdict::Irreducible)
}

fn divisors(f: &crate::arith::Factorization, cap: usize) -> Option<Vec<BigUint>> {
    let mut out = vec![BigUint::one()];
    for (p, &e) in &f.factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut v = d.clone();
            for _ in 0..=e {
                next.push(v.clone());
                v *= p;
            }
        }
        if next.len() > cap {
            return None;
        }
        out = next;
    }
    Some(out)
}

/// Fujiwara bound `2 max |c_{d-i}/c_d|^{1/i}` on root moduli, slightly inflated.
fn fujiwara_bound(f: &IntPolynomial) -> f64 {
    let d = f.degree().unwrap_or(0);
    let lc = f.coeff(d).abs().to_f64().unwrap_or(f64::INFINITY);
    let mut m = 0.0f64;
    for i in 1..=d {
        let c = f.coeff(d - i).abs().to_f64().unwrap_or(f64::INFINITY);
        let mut ratio = c / lc;
        if i == d {
            ratio /= 2.0;
        }
        m = m.max(ratio.powf(1.0 / i as f64));
    }
    2.0 * m * (1.0 + 1e-9) + 1e-9
}

/// A rational root of `f`, found by the rational root theorem with candidates
/// pruned to the Fujiwara bound. `None` also when `a_0` or `lc` cannot be
/// fully factored.
pub fn find_rational_root(f: &IntPolynomial) -> Option<BigRational> {
    let d = f.degree()?;
    if d == 0 {
        return None;
    }
    if f.coeff(0).is_zero() {
        return Some(BigRational::zero());
    }
    let fa = factor(&f.coeff(0));
    let fl = factor(&f.coeff(d));
    if !fa.is_complete() || !fl.is_complete() {
        return None;
    }
    let nums = divisors(&fa, 1 << 16)?;
    let dens = divisors(&fl, 1 << 10)?;
    let bound = fujiwara_bound(f);
    for q in &dens {
        let qf = q.to_f64().unwrap_or(f64::INFINITY);
        for p in &nums {
            if p.to_f64().unwrap_or(f64::INFINITY) / qf > bound {
                continue;
            }
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1i32, -1] {
                let num = BigInt::from(p.clone()) * sign;
                let den = BigInt::from(q.clone());
                if homogeneous_eval(f, &num, &den).is_zero() {
                    return Some(BigRational::new(num, den));
                }
            }
        }
    }
    None
}

/// `q^d f(p/q) = sum c_i p^i q^{d-i}`.
fn homogeneous_eval(f: &IntPolynomial, p: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in f.coeffs().iter().rev() {
        acc = acc * p + c * &qpow;
        qpow *= q;
    }
    acc
}

/// Irreducibility test for an arbitrary primitive integer polynomial.
pub fn certify(f: &IntPolynomial, prime_budget: usize) -> Result<IrreducibilityCertificate> {
    let deg = match f.degree() {
        None | Some(0) => return Err(Error::domain("irreducibility of a constant")),
        Some(d) => d,
    };
    if !f.content().is_one() {
        return Err(Error::domain("polynomial is not primitive"));
    }
    if deg == 1 {
        return Ok(IrreducibilityCertificate::new(CertificateKind::Linear, Verdict::Irreducible));
    }
    if deg == 2 {
        let disc = discriminant_value(f)?;
        if disc.is_negative() {
            return Ok(IrreducibilityCertificate {
                discriminant: Some(disc),
                ..IrreducibilityCertificate::new(CertificateKind::QuadraticNegativeDisc, Verdict::Irreducible)
            });
        }
    }
    let mut cert = degree_set_sieve(f, prime_budget)?;
    let needs_root_check = cert.sieve.as_ref().is_some_and(|w| w.surviving.contains(&1) || w.primes_examined == 0);
    if cert.verdict == Verdict::Unknown && needs_root_check {
        if let Some(r) = find_rational_root(f) {
            cert.kind = CertificateKind::RationalRoot;
            cert.verdict = Verdict::Reducible;
            cert.rational_root = Some(r);
        }
    }
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: u64,
    pub m: Option<u64>,
    pub kind: CertificateKind,
    pub verdict: Verdict,
    /// Theoretical certificates (family without `m` only).
    pub theoretical: Vec<CertificateKind>,
    /// Sieve primes giving an independent computational witness.
    pub sieve_primes: Vec<u64>,
}

fn scan_row(n: u64, m: Option<u64>, prime_budget: usize) -> Result<ScanRow> {
    let (f, theory) = match m {
        None => (build_f1n(n)?, Some(theoretical_certificate(n)?)),
        Some(m) => (build_mf1n(m, n)?, None),
    };
    let computed = certify(&f, prime_budget)?;
    let sieve_primes = computed.sieve.as_ref().map(|w| w.primes.clone()).unwrap_or_default();
    let theoretical = theory.as_ref().map(|t| t.applicable.clone()).unwrap_or_default();
    let (kind, verdict) = match theory {
        Some(t) if t.verdict == Verdict::Irreducible => (t.kind, Verdict::Irreducible),
        _ => (computed.kind, computed.verdict),
    };
    Ok(ScanRow { n, m, kind, verdict, theoretical, sieve_primes })
}

/// One row per `n` in `n_lo..=n_hi`, for `f_{1,n}` or for `mf_{1,n}` when `m` is given.
pub fn conjecture_scan(n_lo: u64, n_hi: u64, m: Option<u64>, prime_budget: usize) -> Result<Vec<ScanRow>> {
    if n_lo < 2 || n_lo > n_hi {
        return Err(Error::domain(format!("need 2 <= n_lo <= n_hi, got {n_lo}..{n_hi}")));
    }
    (n_lo..=n_hi).into_par_iter().map(|n| scan_row(n, m, prime_budget)).collect()
}

/// Verdict counts of a scan.
pub fn tally(rows: &[ScanRow]) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for r in rows {
        let key = match r.verdict {
            Verdict::Irreducible => "irreducible",
            Verdict::Reducible => "reducible",
            Verdict::Unknown => "unknown",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn theoretical_examples() {
        let c4 = theoretical_certificate(4).unwrap();
        assert_eq!(c4.kind, CertificateKind::EisensteinShift);
        assert_eq!(c4.shift_prime, Some(5));
        let shifted = shift_by_one(&build_f1n(4).unwrap());
        assert_eq!(shifted, p(&[10, 10, 5, 1]));

        let c7 = theoretical_certificate(7).unwrap();
        assert_eq!(c7.kind, CertificateKind::PrimeN);
        let c9 = theoretical_certificate(9).unwrap();
        assert_eq!(c9.kind, CertificateKind::PrimePowerN);
        assert_eq!(c9.prime_power, Some((3, 2)));
        // 4 = 2^2 and 5 prime: both apply, Eisenstein first
        assert_eq!(c4.applicable, vec![CertificateKind::EisensteinShift, CertificateKind::PrimePowerN]);
        let c14 = theoretical_certificate(14).unwrap();
        assert_eq!(c14.kind, CertificateKind::None);
        assert_eq!(c14.verdict, Verdict::Unknown);
    }

    #[test]
    fn eisenstein_is_checked_on_coefficients() {
        for n in 2..=200u64 {
            if is_prime_u64(n + 1) {
                assert!(is_eisenstein_after_shift(&build_f1n(n).unwrap(), n + 1), "n={n}");
            }
        }
        // x^2 + 1 shifted is x^2 + 2x + 2: Eisenstein at 2, not at 3
        assert!(is_eisenstein_after_shift(&p(&[1, 0, 1]), 2));
        assert!(!is_eisenstein_after_shift(&p(&[1, 0, 1]), 3));
    }

    #[test]
    fn sieve_examples() {
        let c = degree_set_sieve_with_primes(&build_f1n(5).unwrap(), &[7]).unwrap();
        assert_eq!(c.verdict, Verdict::Irreducible);
        assert_eq!(c.sieve.as_ref().unwrap().cycle_types[0], CycleType::from_parts([4]));

        let c = degree_set_sieve_with_primes(&build_f1n(4).unwrap(), &[3]).unwrap();
        assert_eq!(c.verdict, Verdict::Irreducible);
        assert_eq!(c.sieve.as_ref().unwrap().primes, vec![3]);
    }

    #[test]
    fn negative_controls() {
        let x4 = p(&[1, 0, 0, 0, 1]);
        let c = degree_set_sieve(&x4, 500).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        assert_eq!(c.sieve.as_ref().unwrap().surviving, vec![2]);
        assert_eq!(certify(&x4, 200).unwrap().verdict, Verdict::Unknown);

        let prod = &p(&[1, 0, 1]) * &p(&[2, 0, 1]);
        let c = certify(&prod, 500).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
        assert!(c.sieve.unwrap().surviving.contains(&2));
    }

    #[test]
    fn rational_roots_give_reducible() {
        let f = &p(&[-3, 2]) * &p(&[1, 1, 1]);
        let c = certify(&f, 100).unwrap();
        assert_eq!(c.verdict, Verdict::Reducible);
        assert_eq!(c.rational_root, Some(BigRational::new(3.into(), 2.into())));
        assert_eq!(find_rational_root(&p(&[0, 1, 1])), Some(BigRational::zero()));
        assert_eq!(find_rational_root(&p(&[2, 0, 1])), None);
        assert_eq!(find_rational_root(&p(&[-12, 1, 1])), Some(BigRational::from_integer(3.into())));
    }

    #[test]
    fn errors() {
        assert!(degree_set_sieve(&p(&[1, 1]), 10).is_err());
        assert!(degree_set_sieve(&p(&[2, 0, 2]), 10).is_err());
        assert!(certify(&p(&[5]), 10).is_err());
        assert!(theoretical_certificate(1).is_err());
        assert!(conjecture_scan(5, 4, None, 10).is_err());
    }

    #[test]
    fn witnesses_reverify() {
        for n in 3..=40u64 {
            let f = build_f1n(n).unwrap();
            let c = degree_set_sieve(&f, DEFAULT_PRIME_BUDGET).unwrap();
            assert_eq!(c.verdict, Verdict::Irreducible, "n={n}");
            assert!(verify_sieve_witness(&f, c.sieve.as_ref().unwrap()).unwrap());
        }
    }

    #[test]
    fn scan_examples() {
        let rows = conjecture_scan(2, 30, None, 200).unwrap();
        assert_eq!(rows.len(), 29);
        assert!(rows.iter().all(|r| r.verdict == Verdict::Irreducible));
        assert_eq!(rows[0].kind, CertificateKind::EisensteinShift);

        let q = conjecture_scan(3, 3, Some(2), 200).unwrap();
        assert_eq!(q[0].kind, CertificateKind::QuadraticNegativeDisc);
        assert_eq!(q[0].verdict, Verdict::Irreducible);

        let r = conjecture_scan(4, 4, Some(2), 50).unwrap();
        assert_eq!(r[0].verdict, Verdict::Irreducible);
        assert_eq!(tally(&rows).get("irreducible"), Some(&29));
    }
}
