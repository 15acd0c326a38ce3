//! Polynomials over prime fields and their factorization degree pattern.
//!
//! Only the multiset of irreducible factor degrees is computed. For an
//! unramified prime this is the cycle type of the Frobenius element acting on
//! the roots (Dedekind), which is all the Galois and irreducibility code needs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::is_prime_u64;
use crate::polyz::IntPolynomial;
use crate::{Error, Result};

/// A prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::domain(format!("modulus {p} exceeds 2^63")));
        }
        if !is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Self(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 - 2)
    }

    /// Products below 2^64 allow summing many of them in a u128 before reducing.
    fn lazy(self) -> bool {
        self.0 < 1 << 32
    }

    fn reduce_big(self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.0)).to_u64().expect("residue fits in u64")
    }
}

/// u128 accumulator with deferred reduction.
#[derive(Clone, Copy)]
struct Acc {
    p: PrimeModulus,
    lazy: bool,
}

impl Acc {
    fn new(p: PrimeModulus) -> Self {
        Self { p, lazy: p.lazy() }
    }

    #[inline]
    fn fma(self, acc: u128, a: u64, b: u64) -> u128 {
        let t = acc + a as u128 * b as u128;
        if self.lazy {
            t
        } else {
            t % self.p.0 as u128
        }
    }

    #[inline]
    fn finish(self, acc: u128) -> u64 {
        (acc % self.p.0 as u128) as u64
    }
}

/// Polynomial over `F_p`, ascending coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPolynomial {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl fmt::Debug for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPolynomial({:?} mod {})", self.coeffs, self.modulus.0)
    }
}

impl ModPolynomial {
    pub fn new(modulus: PrimeModulus, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus.0).collect();
        trim(&mut coeffs);
        Self { modulus, coeffs }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        self.coeffs.iter().rev().fold(0, |acc, &c| p.add(p.mul(acc, x), c))
    }

    fn derivative(&self) -> Vec<u64> {
        let p = self.modulus;
        let mut d: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| p.mul(c, i as u64 % p.0))
            .collect();
        trim(&mut d);
        d
    }

    fn monic_coeffs(&self) -> Vec<u64> {
        let p = self.modulus;
        let lead = *self.coeffs.last().expect("nonzero polynomial");
        let inv = p.inv(lead);
        self.coeffs.iter().map(|&c| p.mul(c, inv)).collect()
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Coefficientwise reduction. The degree drops if `p` divides the leading coefficient.
pub fn reduce_mod_p(f: &IntPolynomial, p: PrimeModulus) -> ModPolynomial {
    let coeffs = f.coeffs().iter().map(|c| p.reduce_big(c)).collect();
    ModPolynomial::new(p, coeffs)
}

/// Multiset of irreducible factor degrees of a polynomial over `F_p`.
///
/// `degrees` is sorted in decreasing order so it doubles as a partition key.
/// When `squarefree` is false the degrees are left empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CycleType {
    pub degrees: Vec<usize>,
    pub squarefree: bool,
}

impl CycleType {
    /// Builds a squarefree cycle type from any ordering of the parts.
    pub fn from_parts(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut degrees: Vec<usize> = parts.into_iter().filter(|&d| d > 0).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Self { degrees, squarefree: true }
    }

    pub fn not_squarefree() -> Self {
        Self { degrees: Vec::new(), squarefree: false }
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Number of parts equal to `k`.
    pub fn count(&self, k: usize) -> usize {
        self.degrees.iter().filter(|&&d| d == k).count()
    }

    /// A permutation with this cycle type is even.
    pub fn is_even(&self) -> bool {
        self.degrees.iter().filter(|&&d| d % 2 == 0).count() % 2 == 0
    }

    /// Every degree realisable as the degree of a product of a subset of the factors.
    pub fn subset_sums(&self) -> Vec<bool> {
        let total = self.total();
        let mut reach = vec![false; total + 1];
        reach[0] = true;
        for &d in &self.degrees {
            for s in (d..=total).rev() {
                if reach[s - d] {
                    reach[s] = true;
                }
            }
        }
        reach
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.squarefree {
            return write!(f, "not-squarefree");
        }
        write!(f, "[")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

// ---- slice-level arithmetic over F_p -------------------------------------

/// `a mod m` for monic `m` with `deg m >= 1`.
fn rem_monic(p: PrimeModulus, a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    if a.len() <= dm {
        let mut r = a.to_vec();
        trim(&mut r);
        return r;
    }
    let acc = Acc::new(p);
    let neg_m: Vec<u64> = m[..dm].iter().map(|&c| p.sub(0, c)).collect();
    let mut work: Vec<u128> = a.iter().map(|&c| c as u128).collect();
    for top in (dm..a.len()).rev() {
        let q = acc.finish(work[top]);
        if q == 0 {
            continue;
        }
        let base = top - dm;
        for (j, &c) in neg_m.iter().enumerate() {
            work[base + j] = acc.fma(work[base + j], q, c);
        }
    }
    let mut r: Vec<u64> = work[..dm].iter().map(|&w| acc.finish(w)).collect();
    trim(&mut r);
    r
}

fn mul_full(p: PrimeModulus, a: &[u64], b: &[u64]) -> Vec<u128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let acc = Acc::new(p);
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = acc.fma(out[i + j], x, y);
        }
    }
    out
}

fn mul_mod(p: PrimeModulus, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let acc = Acc::new(p);
    let full: Vec<u64> = mul_full(p, a, b).into_iter().map(|w| acc.finish(w)).collect();
    rem_monic(p, &full, m)
}

fn pow_mod(p: PrimeModulus, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut result = rem_monic(p, &[1], m);
    let mut b = rem_monic(p, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(p, &result, &b, m);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_mod(p, &b, &b, m);
        }
    }
    result
}

fn make_monic(p: PrimeModulus, a: &mut [u64]) {
    if let Some(&lead) = a.last() {
        let inv = p.inv(lead);
        for c in a.iter_mut() {
            *c = p.mul(*c, inv);
        }
    }
}

/// Monic gcd; the zero polynomial's gcd with `b` is `b` made monic.
fn gcd(p: PrimeModulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        make_monic(p, &mut y);
        let r = if y.len() == 1 { Vec::new() } else { rem_monic(p, &x, &y) };
        x = y;
        y = r;
    }
    make_monic(p, &mut x);
    x
}

/// Exact quotient `a / b` for monic `b`.
fn div_exact_monic(p: PrimeModulus, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = b.len() - 1;
    let mut work = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for top in (db..a.len()).rev() {
        let c = work[top];
        q[top - db] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let idx = top - db + j;
            work[idx] = p.sub(work[idx], p.mul(c, bj));
        }
    }
    debug_assert!(work[..db].iter().all(|&c| c == 0));
    q
}

/// Rows `x^{k p} mod f` for `k < deg f`: the matrix of the Frobenius map on
/// `F_p[x]/(f)`.
fn frobenius_matrix(p: PrimeModulus, f: &[u64]) -> Vec<Vec<u64>> {
    let d = f.len() - 1;
    let mut rows = Vec::with_capacity(d);
    let mut row = vec![1u64];
    rows.push(row.clone());
    if d == 1 {
        return rows;
    }
    let step_by_shift = p.0 <= 2 * d as u64;
    let xp = if step_by_shift { Vec::new() } else { pow_mod(p, &[0, 1], p.0, f) };
    for _ in 1..d {
        row = if step_by_shift {
            let mut r = row;
            for _ in 0..p.0 {
                r = times_x_mod(p, &r, f);
            }
            r
        } else {
            mul_mod(p, &row, &xp, f)
        };
        rows.push(row.clone());
    }
    rows
}

/// `a * x mod f` for monic `f` and `deg a < deg f`.
fn times_x_mod(p: PrimeModulus, a: &[u64], f: &[u64]) -> Vec<u64> {
    let d = f.len() - 1;
    let mut out = vec![0u64; d];
    let top = if a.len() == d { a[d - 1] } else { 0 };
    for i in (1..d).rev() {
        out[i] = *a.get(i - 1).unwrap_or(&0);
    }
    if top != 0 {
        for i in 0..d {
            out[i] = p.sub(out[i], p.mul(top, f[i]));
        }
    }
    trim(&mut out);
    out
}

fn apply_matrix(p: PrimeModulus, rows: &[Vec<u64>], v: &[u64], d: usize) -> Vec<u64> {
    let acc = Acc::new(p);
    let mut out = vec![0u128; d];
    for (k, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (j, &r) in rows[k].iter().enumerate() {
            out[j] = acc.fma(out[j], c, r);
        }
    }
    let mut res: Vec<u64> = out.into_iter().map(|w| acc.finish(w)).collect();
    trim(&mut res);
    res
}

/// Distinct-degree factorization of a monic squarefree polynomial, returning
/// the multiset of factor degrees.
fn ddf_degrees(p: PrimeModulus, f: &[u64]) -> Vec<usize> {
    let d = f.len() - 1;
    if d == 1 {
        return vec![1];
    }
    let frob = frobenius_matrix(p, f);
    let mut remaining = f.to_vec();
    let mut h = vec![0u64, 1]; // x^{p^i} mod f
    let mut degrees = Vec::new();
    let mut i = 0;
    while remaining.len() > 2 * (i + 1) {
        i += 1;
        h = apply_matrix(p, &frob, &h, d);
        let mut h_minus_x = h.clone();
        if h_minus_x.len() < 2 {
            h_minus_x.resize(2, 0);
        }
        h_minus_x[1] = p.sub(h_minus_x[1], 1);
        trim(&mut h_minus_x);
        let g = gcd(p, &remaining, &h_minus_x);
        let dg = g.len() - 1;
        if dg > 0 {
            debug_assert_eq!(dg % i, 0, "degree-{i} part has degree {dg}");
            degrees.extend(std::iter::repeat_n(i, dg / i));
            remaining = div_exact_monic(p, &remaining, &g);
        }
    }
    if remaining.len() > 1 {
        degrees.push(remaining.len() - 1);
    }
    degrees
}

/// Factor degree pattern of `f` over `F_p`. Non-squarefree inputs report
/// `squarefree = false` with no degrees.
pub fn factor_cycle_type(f: &ModPolynomial) -> Result<CycleType> {
    let Some(deg) = f.degree() else {
        return Err(Error::domain("cycle type of the zero polynomial"));
    };
    if deg == 0 {
        return Err(Error::domain("cycle type of a constant polynomial"));
    }
    let p = f.modulus;
    let monic = f.monic_coeffs();
    let g = gcd(p, &monic, &f.derivative());
    if g.len() > 1 {
        return Ok(CycleType::not_squarefree());
    }
    Ok(CycleType::from_parts(ddf_degrees(p, &monic)))
}

/// Cycle type of an integer polynomial modulo `p`. Returns `None` when `p`
/// divides the leading coefficient (the reduction loses degree).
pub fn cycle_type_of(f: &IntPolynomial, p: PrimeModulus) -> Result<Option<CycleType>> {
    let reduced = reduce_mod_p(f, p);
    if reduced.degree() != f.degree() {
        return Ok(None);
    }
    factor_cycle_type(&reduced).map(Some)
}

pub fn is_irreducible_mod_p(f: &ModPolynomial) -> Result<bool> {
    let ct = factor_cycle_type(f)?;
    Ok(ct.squarefree && ct.degrees.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyz::build_f1n;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn mp(p: u64, c: &[u64]) -> ModPolynomial {
        ModPolynomial::new(pm(p), c.to_vec())
    }

    // ---- brute-force oracle: trial division by every monic polynomial ----

    fn all_monic(p: u64, deg: usize) -> Vec<Vec<u64>> {
        let count = p.pow(deg as u32);
        (0..count)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(deg + 1);
                for _ in 0..deg {
                    c.push(idx % p);
                    idx /= p;
                }
                c.push(1);
                c
            })
            .collect()
    }

    fn naive_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top];
            for j in 0..=db {
                let idx = top - db + j;
                r[idx] = (r[idx] + p * p - c * b[j] % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    fn naive_div(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
        let db = b.len() - 1;
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - db];
        for top in (db..a.len()).rev() {
            let c = r[top] % p;
            q[top - db] = c;
            for j in 0..=db {
                let idx = top - db + j;
                r[idx] = (r[idx] + p * p - c * b[j] % p) % p;
            }
        }
        q
    }

    /// Monic irreducibles of each degree up to `max_deg`, found by trial division.
    fn irreducibles(p: u64, max_deg: usize) -> Vec<Vec<u64>> {
        let mut found: Vec<Vec<u64>> = Vec::new();
        for deg in 1..=max_deg {
            for cand in all_monic(p, deg) {
                if found
                    .iter()
                    .filter(|g| 2 * (g.len() - 1) <= deg)
                    .all(|g| !naive_rem(p, &cand, g).is_empty())
                {
                    found.push(cand);
                }
            }
        }
        found
    }

    /// Returns None if not squarefree.
    fn oracle_cycle_type(p: u64, f: &[u64], irr: &[Vec<u64>]) -> Option<CycleType> {
        let mut rest = f.to_vec();
        let mut parts = Vec::new();
        for g in irr {
            if g.len() > rest.len() {
                break;
            }
            let mut mult = 0;
            while rest.len() >= g.len() && naive_rem(p, &rest, g).is_empty() {
                rest = naive_div(p, &rest, g);
                mult += 1;
            }
            if mult > 1 {
                return None;
            }
            if mult == 1 {
                parts.push(g.len() - 1);
            }
        }
        // no factor of degree <= half of what is left: the rest is irreducible
        if rest.len() > 1 {
            parts.push(rest.len() - 1);
        }
        Some(CycleType::from_parts(parts))
    }

    fn cached_irreducibles(p: u64) -> std::sync::Arc<Vec<Vec<u64>>> {
        use std::collections::HashMap;
        use std::sync::{Arc, Mutex, OnceLock};
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<Vec<u64>>>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap();
        guard.entry(p).or_insert_with(|| Arc::new(irreducibles(p, 4))).clone()
    }

    #[test]
    fn cycle_types_match_trial_division_oracle() {
        for p in [2u64, 3, 5] {
            let irr = irreducibles(p, 5);
            for deg in 1..=5 {
                for f in all_monic(p, deg) {
                    let got = factor_cycle_type(&mp(p, &f)).unwrap();
                    match oracle_cycle_type(p, &f, &irr) {
                        Some(ct) => assert_eq!(got, ct, "p={p} f={f:?}"),
                        None => assert!(!got.squarefree, "p={p} f={f:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree 4 over F_3 is (81 - 9) / 4 = 18
        let irr = irreducibles(3, 4);
        assert_eq!(irr.iter().filter(|g| g.len() == 5).count(), 18);
        let irr2 = irreducibles(2, 5);
        assert_eq!(irr2.iter().filter(|g| g.len() == 6).count(), 6);
    }

    #[test]
    fn reductions() {
        let f5 = build_f1n(5).unwrap();
        let f4 = build_f1n(4).unwrap();
        assert_eq!(reduce_mod_p(&f5, pm(7)).coeffs(), &[5, 4, 3, 2, 1]);
        assert_eq!(reduce_mod_p(&f4, pm(3)).coeffs(), &[1, 0, 2, 1]);
        assert_eq!(reduce_mod_p(&f4, pm(2)).coeffs(), &[0, 1, 0, 1]);
        let neg = IntPolynomial::from_i64s(&[-1, 0, 1]);
        assert_eq!(reduce_mod_p(&neg, pm(5)).coeffs(), &[4, 0, 1]);
        let drops = IntPolynomial::from_i64s(&[1, 1, 3]);
        assert_eq!(reduce_mod_p(&drops, pm(3)).degree(), Some(1));
    }

    #[test]
    fn frobenius_anchor_examples() {
        let f5 = build_f1n(5).unwrap();
        let ct11 = factor_cycle_type(&reduce_mod_p(&f5, pm(11))).unwrap();
        assert_eq!(ct11, CycleType::from_parts([1, 3]));
        let ct7 = factor_cycle_type(&reduce_mod_p(&f5, pm(7))).unwrap();
        assert_eq!(ct7, CycleType::from_parts([4]));
        let x2m1 = mp(5, &[4, 0, 1]);
        assert_eq!(factor_cycle_type(&x2m1).unwrap(), CycleType::from_parts([1, 1]));
        // the explicit factorization (x - 7)(x^3 + 9x^2 + 4) mod 11
        let f = reduce_mod_p(&f5, pm(11));
        assert_eq!(f.eval(7), 0);
        let cubic = mp(11, &[4, 0, 9, 1]);
        assert!(is_irreducible_mod_p(&cubic).unwrap());
    }

    #[test]
    fn irreducibility_mod_p() {
        let f5 = build_f1n(5).unwrap();
        assert!(is_irreducible_mod_p(&reduce_mod_p(&f5, pm(7))).unwrap());
        assert!(!is_irreducible_mod_p(&reduce_mod_p(&f5, pm(11))).unwrap());
        assert!(!is_irreducible_mod_p(&mp(5, &[1, 0, 1])).unwrap());
        assert!(is_irreducible_mod_p(&reduce_mod_p(&build_f1n(4).unwrap(), pm(3))).unwrap());
    }

    #[test]
    fn errors_and_non_squarefree() {
        assert!(matches!(factor_cycle_type(&mp(5, &[])), Err(Error::Domain(_))));
        assert!(factor_cycle_type(&mp(5, &[3])).is_err());
        // (x+1)^2
        assert!(!factor_cycle_type(&mp(7, &[1, 2, 1])).unwrap().squarefree);
        // x^p - x... derivative vanishes for x^5 + 1 over F_5
        assert!(!factor_cycle_type(&mp(5, &[1, 0, 0, 0, 0, 1])).unwrap().squarefree);
        assert!(PrimeModulus::new(91).is_err());
        assert!(PrimeModulus::new(1).is_err());
    }

    #[test]
    fn large_prime_modulus() {
        // 2^61 - 1 exercises the eager-reduction path
        let p = pm((1u64 << 61) - 1);
        let f = reduce_mod_p(&build_f1n(6).unwrap(), p);
        let ct = factor_cycle_type(&f).unwrap();
        assert_eq!(ct.total(), 5);
        // compare with the lazy path on a product of known factors
        let q = pm(1_000_003);
        let g = ModPolynomial::new(q, vec![2, 0, 0, 1]); // x^3 + 2
        let h = ModPolynomial::new(q, mul_full(q, &g.coeffs, &[5, 1]).into_iter().map(|w| (w % 1_000_003) as u64).collect());
        let ct_g = factor_cycle_type(&g).unwrap();
        let ct_h = factor_cycle_type(&h).unwrap();
        assert_eq!(ct_h.total(), 4);
        assert_eq!(ct_h.count(1), ct_g.count(1) + 1);
    }

    #[test]
    fn subset_sums() {
        let ct = CycleType::from_parts([3, 1]);
        assert_eq!(ct.subset_sums(), vec![true, true, false, true, true]);
        assert!(!CycleType::from_parts([2, 1]).is_even());
        assert!(CycleType::from_parts([3]).is_even());
        assert_eq!(CycleType::from_parts([1, 3, 2]).to_string(), "[3,2,1]");
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(300))]
        #[test]
        fn random_small_polynomials_match_oracle(
            p in proptest::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
            c in proptest::collection::vec(0u64..13, 1..8),
        ) {
            let mut f: Vec<u64> = c.iter().map(|x| x % p).collect();
            f.push(1);
            let irr = cached_irreducibles(p);
            let got = factor_cycle_type(&mp(p, &f)).unwrap();
            match oracle_cycle_type(p, &f, &irr) {
                Some(ct) => {
                    proptest::prop_assert_eq!(got.total(), f.len() - 1);
                    proptest::prop_assert_eq!(got, ct);
                }
                None => proptest::prop_assert!(!got.squarefree),
            }
        }
    }
}
