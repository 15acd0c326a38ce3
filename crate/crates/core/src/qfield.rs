//! Arithmetic of `Z[sqrt(-2)]`, the ray class group modulo `m = (5 sqrt(-2))`,
//! the theta series of the order-3 Hecke character, and the comparison with
//! products of two Dedekind eta functions.
//!
//! `H` is the set of elements coprime to `m` with `5 | ab` (for `a + b sqrt(-2)`).
//! Modulo 5 these are the elements of `F_25^*` whose square lies in `F_5^*`, a
//! subgroup of index 3, so the ray class group is cyclic of order 3 and is
//! generated by `p_3 = (1 + sqrt(-2))`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{is_prime_u64, primes_up_to};
use crate::modp::{cycle_type_of, CycleType, PrimeModulus};
use crate::polyz::build_f1n;
use crate::{Error, Result};

/// `a + b sqrt(-2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + 2 * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::new(1, 0), |acc, _| &acc * self)
    }

    /// `self` divides `other` in `Z[sqrt(-2)]`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let n = self.norm();
        let t = other * &self.conj();
        t.a.is_multiple_of(&n) && t.b.is_multiple_of(&n)
    }

    /// Associate with `a > 0`, or `a = 0` and `b > 0`; units are `+-1`.
    pub fn canonical(&self) -> Self {
        if self.a.is_negative() || (self.a.is_zero() && self.b.is_negative()) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn mod5(&self) -> (u8, u8) {
        let r = |x: &BigInt| x.mod_floor(&BigInt::from(5)).to_u8().unwrap();
        (r(&self.a), r(&self.b))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}sqrt(-2)", self.a, -&self.b)
        } else {
            write!(f, "{} + {}sqrt(-2)", self.a, self.b)
        }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a * &o.a - 2 * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b }
    }
}

/// A nonzero ideal, stored by its canonical generator (class number one).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadIdeal {
    pub generator: QuadInt,
    pub norm: BigInt,
}

impl QuadIdeal {
    pub fn new(generator: &QuadInt) -> Result<Self> {
        if generator.is_zero() {
            return Err(Error::domain("zero ideal"));
        }
        let generator = generator.canonical();
        Ok(Self { norm: generator.norm(), generator })
    }

    pub fn from_ab(a: i64, b: i64) -> Result<Self> {
        Self::new(&QuadInt::new(a, b))
    }

    /// Coprime to `m = (5 sqrt(-2))`, whose norm is 50.
    pub fn is_coprime_to_modulus(&self) -> bool {
        self.norm.gcd(&BigInt::from(10)).is_one()
    }
}

/// Canonical ideals of norm `n`; conjugates are listed separately.
pub fn ideals_of_norm(n: u64) -> Result<Vec<QuadIdeal>> {
    if n == 0 {
        return Err(Error::domain("norm must be positive"));
    }
    let mut out = Vec::new();
    let mut b = 0u64;
    while 2 * b * b <= n {
        let rest = n - 2 * b * b;
        let a = rest.sqrt();
        if a * a == rest {
            let (ai, bi) = (a as i64, b as i64);
            if a == 0 {
                out.push(QuadIdeal::from_ab(0, bi)?);
            } else {
                out.push(QuadIdeal::from_ab(ai, bi)?);
                if b > 0 {
                    out.push(QuadIdeal::from_ab(ai, -bi)?);
                }
            }
        }
        b += 1;
    }
    Ok(out)
}

fn check_coprime(z: &QuadInt) -> Result<()> {
    if z.norm().gcd(&BigInt::from(50)).is_one() {
        Ok(())
    } else {
        Err(Error::domain(format!("{z} is not coprime to 5 sqrt(-2)")))
    }
}

/// `z` lies in `H`: `5 | ab`.
pub fn h_membership(z: &QuadInt) -> Result<bool> {
    check_coprime(z)?;
    Ok((&z.a * &z.b).is_multiple_of(&BigInt::from(5)))
}

/// `H` from its two-part definition: `z` congruent to a rational integer
/// modulo `m`, or `ab sqrt(-2)` divisible by `m`.
pub fn h_membership_definitional(z: &QuadInt) -> Result<bool> {
    check_coprime(z)?;
    let m = QuadInt::new(0, 5);
    // congruence classes of rational integers mod m are represented by 0..10
    let congruent = (0..10).any(|l| m.divides(&(z - &QuadInt::new(l, 0))));
    let ab = QuadInt::new(0, &z.a * &z.b);
    Ok(congruent || m.divides(&ab))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayClassContext {
    pub modulus: QuadIdeal,
    pub group_order: u32,
    /// `p_3 = (1 + sqrt(-2))`, the class with index 1.
    pub generator: QuadIdeal,
    /// Class index for each `(a mod 5, b mod 5)` with `a^2 + 2b^2` prime to 5.
    table: [[Option<u8>; 5]; 5],
}

impl RayClassContext {
    pub fn new() -> Result<Self> {
        let pi = QuadInt::new(1, 1);
        let cube = pi.pow(3);
        if !(h_membership(&cube)? && !h_membership(&pi)? && !h_membership(&pi.pow(2))?) {
            return Err(Error::invariant("class of 1 + sqrt(-2) does not have order 3"));
        }
        let mut table = [[None; 5]; 5];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                // odd representative so the element is also prime to 2
                let odd = if a % 2 == 1 { a } else { a + 5 };
                let z = QuadInt::new(odd as i64, b as i64);
                if (a * a + 2 * b * b) % 5 != 0 {
                    *slot = Some(class_by_search(&z, &pi)?);
                }
            }
        }
        Ok(Self {
            modulus: QuadIdeal::from_ab(0, 5)?,
            group_order: 3,
            generator: QuadIdeal::new(&pi)?,
            table,
        })
    }

    /// Class index `t` in `{0, 1, 2}` of a generator coprime to `m`.
    pub fn class_of(&self, z: &QuadInt) -> Result<u8> {
        check_coprime(z)?;
        let (a, b) = z.mod5();
        self.table[a as usize][b as usize].ok_or_else(|| Error::invariant("missing class"))
    }

    /// Same as [`class_of`](Self::class_of) for machine-sized components.
    pub fn class_of_ab(&self, a: i64, b: i64) -> Result<u8> {
        let norm = a as i128 * a as i128 + 2 * b as i128 * b as i128;
        if norm.gcd(&50) != 1 {
            return Err(Error::domain(format!("{a} + {b}sqrt(-2) is not coprime to 5 sqrt(-2)")));
        }
        let (r, s) = (a.rem_euclid(5) as usize, b.rem_euclid(5) as usize);
        self.table[r][s].ok_or_else(|| Error::invariant("missing class"))
    }
}

/// The unique `t` with `z (1 + sqrt(-2))^{3-t}` in `H`.
fn class_by_search(z: &QuadInt, pi: &QuadInt) -> Result<u8> {
    let hits: Vec<u8> = (0..3u8)
        .filter(|&t| h_membership(&(z * &pi.pow(3 - t as u32))).unwrap_or(false))
        .collect();
    match hits.as_slice() {
        [t] => Ok(*t),
        _ => Err(Error::invariant(format!("no unique ray class for {z}: {hits:?}"))),
    }
}

/// Class of an ideal, checked to agree on both associates of its generator.
pub fn ray_class(ideal: &QuadIdeal, ctx: &RayClassContext) -> Result<u8> {
    let t = ctx.class_of(&ideal.generator)?;
    let u = ctx.class_of(&-ideal.generator.clone())?;
    if t != u {
        return Err(Error::invariant("ray class depends on the generator"));
    }
    Ok(t)
}

/// `u + v w` with `w` a primitive cube root of unity, `w^2 = -1 - w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Eisenstein {
    pub u: i64,
    pub v: i64,
}

impl Eisenstein {
    pub const ONE: Self = Self { u: 1, v: 0 };
    pub const OMEGA: Self = Self { u: 0, v: 1 };

    pub fn new(u: i64, v: i64) -> Self {
        Self { u, v }
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Self::ONE, |acc, _| acc * self)
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.v == 0).then_some(self.u)
    }
}

impl Add for Eisenstein {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { u: self.u + o.u, v: self.v + o.v }
    }
}

impl Mul for Eisenstein {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { u: self.u * o.u - self.v * o.v, v: self.u * o.v + o.u * self.v - self.v * o.v }
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u, self.v) {
            (u, 0) => write!(f, "{u}"),
            (0, v) => write!(f, "{v}w"),
            (u, v) if v < 0 => write!(f, "{u} - {}w", -v),
            (u, v) => write!(f, "{u} + {v}w"),
        }
    }
}

/// The character sending the class of `p_3` to `omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeckeCharacter {
    pub omega: Eisenstein,
}

impl Default for HeckeCharacter {
    fn default() -> Self {
        Self { omega: Eisenstein::OMEGA }
    }
}

impl HeckeCharacter {
    pub fn value(&self, class: u8) -> Eisenstein {
        self.omega.pow(class as u32 % 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaSeries {
    pub n_max: usize,
    /// `coeffs[n - 1] = a(n)`.
    pub coeffs: Vec<Eisenstein>,
    pub integral: bool,
}

impl ThetaSeries {
    /// `a(n)` as an integer; `None` outside the range or if not integral.
    pub fn a(&self, n: usize) -> Option<i64> {
        if n == 0 {
            return None;
        }
        self.coeffs.get(n - 1).and_then(|c| c.as_integer())
    }
}

/// `a(n)` for `n <= n_max`: the sum of the character over ideals of norm `n`
/// coprime to `m`.
pub fn theta_coefficients(n_max: usize) -> Result<ThetaSeries> {
    if n_max == 0 {
        return Err(Error::domain("n_max >= 1"));
    }
    let ctx = RayClassContext::new()?;
    let chi = HeckeCharacter::default();
    let mut coeffs = vec![Eisenstein::default(); n_max];
    let mut b: i64 = 0;
    while 2 * b * b <= n_max as i64 {
        let mut a: i64 = 0;
        loop {
            let n = a * a + 2 * b * b;
            if n > n_max as i64 {
                break;
            }
            // canonical generators: a > 0 with b of either sign, or a = 0 with b > 0
            let signs: &[i64] = if a == 0 || b == 0 { &[1] } else { &[1, -1] };
            if n > 0 && n.gcd(&10) == 1 && (a > 0 || b > 0) {
                for &s in signs {
                    let ideal = QuadIdeal::from_ab(a, s * b)?;
                    let t = ctx.class_of(&ideal.generator)?;
                    coeffs[n as usize - 1] = coeffs[n as usize - 1] + chi.value(t);
                }
            }
            a += 1;
        }
        b += 1;
    }
    let integral = coeffs.iter().all(|c| c.v == 0);
    Ok(ThetaSeries { n_max, coeffs, integral })
}

fn check_unramified(p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if 200 % p == 0 {
        return Err(Error::domain(format!("{p} divides the discriminant -200")));
    }
    Ok(())
}

/// `p` splits completely in the splitting field of `f_{1,4}`.
pub fn split_in_l(p: u64) -> Result<bool> {
    check_unramified(p)?;
    let f = build_f1n(4)?;
    let ct = cycle_type_of(&f, PrimeModulus::new(p)?)?
        .ok_or_else(|| Error::invariant("monic reduction lost degree"))?;
    Ok(ct == CycleType::from_parts([1, 1, 1]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representations {
    pub p: u64,
    /// `(x, y)` with `x, y >= 0` and `p = x^2 + 2y^2`.
    pub reps: Vec<(u64, u64)>,
    /// Some representation has `15 | xy`.
    pub fifteen: bool,
}

pub fn rep_x2_2y2(p: u64) -> Representations {
    let mut reps = Vec::new();
    let mut y = 0u64;
    while 2 * y * y <= p {
        let rest = p - 2 * y * y;
        let x = rest.sqrt();
        if x * x == rest {
            reps.push((x, y));
        }
        y += 1;
    }
    let fifteen = reps.iter().any(|&(x, y)| (x * y) % 15 == 0);
    Representations { p, reps, fifteen }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm51Row {
    pub p: u64,
    pub splits: bool,
    pub rep_fifteen: bool,
    pub a_p: i64,
}

impl Thm51Row {
    pub fn consistent(&self) -> bool {
        self.splits == self.rep_fifteen && self.rep_fifteen == (self.a_p == 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Thm51Report {
    pub p_max: u64,
    pub checked: usize,
    pub split_primes: Vec<u64>,
    pub violations: Vec<Thm51Row>,
}

/// Checks `split_in_l(p) <=> 15 | xy for some p = x^2 + 2y^2 <=> a(p) = 2`
/// for every prime `p <= p_max` other than 2 and 5.
pub fn theorem51_equivalence(p_max: u64) -> Result<Thm51Report> {
    if p_max < 10 {
        return Err(Error::domain("p_max >= 10"));
    }
    let theta = theta_coefficients(p_max as usize)?;
    let mut report = Thm51Report { p_max, checked: 0, split_primes: Vec::new(), violations: Vec::new() };
    for p in primes_up_to(p_max) {
        if 200 % p == 0 {
            continue;
        }
        let row = Thm51Row {
            p,
            splits: split_in_l(p)?,
            rep_fifteen: rep_x2_2y2(p).fifteen,
            a_p: theta.a(p as usize).ok_or_else(|| Error::invariant("non-integral theta coefficient"))?,
        };
        report.checked += 1;
        if row.splits {
            report.split_primes.push(p);
        }
        if !row.consistent() {
            report.violations.push(row);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactReport {
    pub checked: u64,
    /// Offending inputs: `(p, x, y)` or `(a, b, X, Y)` packed as a vector.
    pub violations: Vec<Vec<i64>>,
}

/// Every representation `p = x^2 + 2y^2` of a prime `p != 3` has `3 | xy`.
pub fn fact_xy_mod3(p_max: u64) -> FactReport {
    let mut out = FactReport { checked: 0, violations: Vec::new() };
    for p in primes_up_to(p_max) {
        if p == 2 || p == 3 {
            continue;
        }
        for (x, y) in rep_x2_2y2(p).reps {
            out.checked += 1;
            if (x * y) % 3 != 0 {
                out.violations.push(vec![p as i64, x as i64, y as i64]);
            }
        }
    }
    out
}

/// `(a + b sqrt(-2))^3 = X + Y sqrt(-2)` has `5 | XY` for `|a|, |b| <= range`.
pub fn fact_cube_mod5(range: i64) -> FactReport {
    let mut out = FactReport { checked: 0, violations: Vec::new() };
    for a in -range..=range {
        for b in -range..=range {
            let x = a * (a * a - 6 * b * b);
            let y = b * (3 * a * a - 2 * b * b);
            out.checked += 1;
            if (x as i128 * y as i128) % 5 != 0 {
                out.violations.push(vec![a, b, x, y]);
            }
        }
    }
    out
}

/// Coefficients of `prod_{k >= 1} (1 - q^k)` up to `q^len-1` from the
/// pentagonal numbers `k(3k-1)/2`, `k` over all integers.
pub fn euler_function(len: usize) -> Vec<i64> {
    let mut c = vec![0i64; len];
    for k in 0i64.. {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = kk * (3 * kk - 1) / 2;
            if (e as usize) < len {
                c[e as usize] += if kk % 2 == 0 { 1 } else { -1 };
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    c
}

/// `eta(a tau) eta(b tau)` with `a + b = 24`, as `q * E(q^a) E(q^b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaProductSpec {
    pub a: usize,
    pub b: usize,
    /// `coeffs[n - 1]` is the coefficient of `q^n`.
    pub coeffs: Vec<i64>,
}

pub fn eta_product(a: usize, b: usize, n_max: usize) -> Result<EtaProductSpec> {
    if a == 0 || b == 0 || a + b != 24 {
        return Err(Error::domain("need a, b >= 1 with a + b = 24"));
    }
    let e = euler_function(n_max);
    // q^{(a+b)/24} = q shifts everything by one
    let mut coeffs = vec![0i64; n_max];
    for (i, &ci) in e.iter().enumerate() {
        if ci == 0 || i * a >= n_max {
            continue;
        }
        for (j, &cj) in e.iter().enumerate() {
            let exp = i * a + j * b;
            if exp >= n_max {
                break;
            }
            coeffs[exp] += ci * cj;
        }
    }
    Ok(EtaProductSpec { a, b, coeffs })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaMismatchRow {
    pub a: usize,
    pub b: usize,
    pub first_mismatch: Option<usize>,
    pub eta_coeff: Option<i64>,
    pub theta_coeff: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaReport {
    pub n_max: usize,
    pub rows: Vec<EtaMismatchRow>,
    /// Why only `a + b = 24` is searched.
    pub restriction: String,
    /// Primes `p <= n_max` with `a(p) = 2` used in the exponent scans.
    pub split_primes: Vec<u64>,
    /// Solutions of `a(6n-1)^2 + b(6m-1)^2 = 12p` over all pairs and split primes.
    pub solutions_12p: usize,
    /// Same with `24p`, the exponent matching `q^p` in the product expansion.
    pub solutions_24p: usize,
}

/// Integer pairs `(n, m)` with `a(6n-1)^2 + b(6m-1)^2 = target`.
pub fn exponent_solutions(a: u64, b: u64, target: u64) -> usize {
    // 6n - 1 runs over integers = 5 mod 6, whose absolute values are the
    // positive integers prime to 6, each once
    let mut count = 0;
    let mut u = 1u64;
    while a * u * u <= target {
        if u.gcd(&6) == 1 {
            let rest = target - a * u * u;
            if rest.is_multiple_of(b) {
                let v2 = rest / b;
                let v = v2.sqrt();
                if v > 0 && v * v == v2 && v.gcd(&6) == 1 {
                    count += 1;
                }
            }
        }
        u += 1;
    }
    count
}

pub fn eta_product_mismatch(n_max: usize) -> Result<EtaReport> {
    if n_max < 5 {
        return Err(Error::domain("n_max >= 5"));
    }
    let theta = theta_coefficients(n_max)?;
    let mut rows = Vec::new();
    for a in 1..=12usize {
        let b = 24 - a;
        let eta = eta_product(a, b, n_max)?;
        let first = (1..=n_max).find(|&n| theta.a(n) != Some(eta.coeffs[n - 1]));
        rows.push(EtaMismatchRow {
            a,
            b,
            first_mismatch: first,
            eta_coeff: first.map(|n| eta.coeffs[n - 1]),
            theta_coeff: first.and_then(|n| theta.a(n)),
        });
    }
    let split_primes: Vec<u64> =
        primes_up_to(n_max as u64).into_iter().filter(|&p| theta.a(p as usize) == Some(2)).collect();
    let mut solutions_12p = 0;
    let mut solutions_24p = 0;
    for &p in &split_primes {
        for a in 1..=12u64 {
            solutions_12p += exponent_solutions(a, 24 - a, 12 * p);
            solutions_24p += exponent_solutions(a, 24 - a, 24 * p);
        }
    }
    Ok(EtaReport {
        n_max,
        rows,
        restriction: "a + b = 24: the product starts at q^{(a+b)/24} and theta starts at q^1".into(),
        split_primes,
        solutions_12p,
        solutions_24p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(a: i64, b: i64) -> QuadInt {
        QuadInt::new(a, b)
    }

    #[test]
    fn ring_arithmetic() {
        assert_eq!(z(1, 1).pow(3), z(-5, 1));
        assert_eq!(&z(1, 1) * &z(1, -1), z(3, 0));
        for (a, b, c, d) in [(3, -7, 2, 5), (-11, 4, 0, 9), (13, 13, -6, 1)] {
            let (x, y) = (z(a, b), z(c, d));
            assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }
        assert!(z(1, 1).divides(&z(3, 0)));
        assert!(!z(0, 5).divides(&z(5, 0)));
        assert!(z(0, 5).divides(&z(-10, 5)));
    }

    #[test]
    fn ideal_enumeration() {
        let one: Vec<_> = ideals_of_norm(1).unwrap().into_iter().map(|i| i.generator).collect();
        assert_eq!(one, vec![z(1, 0)]);
        let three: Vec<_> = ideals_of_norm(3).unwrap().into_iter().map(|i| i.generator).collect();
        assert_eq!(three, vec![z(1, 1), z(1, -1)]);
        assert!(ideals_of_norm(5).unwrap().is_empty());
        assert_eq!(ideals_of_norm(2).unwrap()[0].generator, z(0, 1));
        // exhaustive oracle over a box
        for n in 1..=300u64 {
            let mut oracle = Vec::new();
            for a in 0..=20i64 {
                for b in -20..=20i64 {
                    if (a * a + 2 * b * b) as u64 == n && (a > 0 || b > 0) {
                        oracle.push(z(a, b));
                    }
                }
            }
            let mut got: Vec<_> = ideals_of_norm(n).unwrap().into_iter().map(|i| i.generator).collect();
            let key = |q: &QuadInt| (q.a.clone(), q.b.clone());
            oracle.sort_by_key(key);
            got.sort_by_key(key);
            assert_eq!(got, oracle, "n={n}");
        }
    }

    #[test]
    fn h_examples() {
        assert!(!h_membership(&z(1, 1)).unwrap());
        assert!(h_membership(&z(-5, 1)).unwrap());
        assert!(h_membership(&z(7, 0)).unwrap());
        assert!(h_membership(&z(2, 1)).is_err());
        assert!(h_membership(&z(5, 5)).is_err());
    }

    fn coprime_box(r: i64) -> Vec<QuadInt> {
        let mut out = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                let q = z(a, b);
                if q.norm().gcd(&BigInt::from(10)).is_one() {
                    out.push(q);
                }
            }
        }
        out
    }

    #[test]
    fn h_definitions_agree_and_close() {
        let elems = coprime_box(50);
        for q in &elems {
            assert_eq!(h_membership(q).unwrap(), h_membership_definitional(q).unwrap(), "{q}");
        }
        let small = coprime_box(12);
        for x in &small {
            for y in &small {
                if h_membership(x).unwrap() && h_membership(y).unwrap() {
                    assert!(h_membership(&(x * y)).unwrap());
                }
            }
        }
    }

    #[test]
    fn ray_class_examples() {
        let ctx = RayClassContext::new().unwrap();
        assert_eq!(ray_class(&QuadIdeal::from_ab(1, 0).unwrap(), &ctx).unwrap(), 0);
        assert_eq!(ray_class(&QuadIdeal::from_ab(1, 1).unwrap(), &ctx).unwrap(), 1);
        assert_eq!(ray_class(&QuadIdeal::from_ab(1, -1).unwrap(), &ctx).unwrap(), 2);
        assert!(ray_class(&QuadIdeal::from_ab(0, 1).unwrap(), &ctx).is_err());
        // index 3: all three classes occur
        let mut seen = [false; 3];
        for q in coprime_box(6) {
            seen[ctx.class_of(&q).unwrap() as usize] = true;
        }
        assert_eq!(seen, [true; 3]);
    }

    #[test]
    fn ray_class_is_homomorphism() {
        let ctx = RayClassContext::new().unwrap();
        let elems = coprime_box(15);
        for x in elems.iter().step_by(3) {
            for y in elems.iter().step_by(5) {
                let lhs = ctx.class_of(&(x * y)).unwrap();
                let rhs = (ctx.class_of(x).unwrap() + ctx.class_of(y).unwrap()) % 3;
                assert_eq!(lhs, rhs);
                // independent of the search table
                let pi = z(1, 1);
                assert_eq!(class_by_search(&(x * y), &pi).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn eisenstein_units() {
        let w = Eisenstein::OMEGA;
        assert_eq!(w.pow(3), Eisenstein::ONE);
        assert_ne!(w, Eisenstein::ONE);
        assert_eq!(w + w.pow(2), Eisenstein::new(-1, 0));
        assert_eq!(Eisenstein::ONE + w + w * w, Eisenstein::default());
    }

    #[test]
    fn theta_examples() {
        let t = theta_coefficients(10_000).unwrap();
        assert!(t.integral);
        assert_eq!(t.a(1), Some(1));
        assert_eq!(t.a(2), Some(0));
        assert_eq!(t.a(3), Some(-1));
        assert_eq!(t.a(9), Some(0));
        assert_eq!(t.a(5), Some(0));
        assert_eq!(t.a(43), Some(2));
        assert_eq!(t.a(41), Some(-1));
    }

    /// Theta coefficients straight from the definition via `ideals_of_norm`.
    #[test]
    fn theta_matches_ideal_sum() {
        let ctx = RayClassContext::new().unwrap();
        let chi = HeckeCharacter::default();
        let t = theta_coefficients(400).unwrap();
        for n in 1..=400u64 {
            let mut s = Eisenstein::default();
            for ideal in ideals_of_norm(n).unwrap() {
                if ideal.is_coprime_to_modulus() {
                    s = s + chi.value(ray_class(&ideal, &ctx).unwrap());
                }
            }
            assert_eq!(s, t.coeffs[n as usize - 1], "n={n}");
        }
    }

    #[test]
    fn split_examples() {
        assert!(!split_in_l(3).unwrap());
        assert!(split_in_l(43).unwrap());
        assert!(!split_in_l(41).unwrap());
        assert!(split_in_l(2).is_err());
        assert!(split_in_l(5).is_err());
        assert!(split_in_l(9).is_err());
        // roots of x^3 + 2x^2 + 3x + 4 mod 43 by exhaustion
        let roots = (0..43u64).filter(|x| (x * x * x + 2 * x * x + 3 * x + 4) % 43 == 0).count();
        assert_eq!(roots, 3);
    }

    #[test]
    fn representation_examples() {
        assert_eq!(rep_x2_2y2(43).reps, vec![(5, 3)]);
        assert!(rep_x2_2y2(43).fifteen);
        assert_eq!(rep_x2_2y2(41).reps, vec![(3, 4)]);
        assert!(!rep_x2_2y2(41).fifteen);
        assert!(rep_x2_2y2(7).reps.is_empty());
    }

    #[test]
    fn theorem51_small() {
        let r = theorem51_equivalence(100).unwrap();
        assert_eq!(r.checked, 23);
        assert!(r.violations.is_empty());
        assert!(r.split_primes.contains(&43));
        assert!(theorem51_equivalence(5).is_err());
    }

    #[test]
    fn proof_facts() {
        let f3 = fact_xy_mod3(1000);
        assert!(f3.checked > 0 && f3.violations.is_empty());
        assert_eq!(rep_x2_2y2(11).reps, vec![(3, 1)]);
        assert_eq!(rep_x2_2y2(17).reps, vec![(3, 2)]);
        let f5 = fact_cube_mod5(60);
        assert_eq!(f5.checked, 121 * 121);
        assert!(f5.violations.is_empty());
        for (a, b) in [(1, 1), (2, 1), (1, 0), (-7, 4)] {
            let c = z(a, b).pow(3);
            assert_eq!(c, z(a * (a * a - 6 * b * b), b * (3 * a * a - 2 * b * b)));
        }
    }

    /// Direct product of `(1 - q^k)` factors.
    fn euler_oracle(len: usize) -> Vec<i64> {
        let mut c = vec![0i64; len];
        c[0] = 1;
        for k in 1..len {
            for i in (k..len).rev() {
                c[i] -= c[i - k];
            }
        }
        c
    }

    #[test]
    fn pentagonal_series() {
        assert_eq!(euler_function(300), euler_oracle(300));
        assert_eq!(&euler_function(8)[..], &[1, -1, -1, 0, 0, 1, 0, 1]);
    }

    #[test]
    fn eta_examples() {
        let report = eta_product_mismatch(60).unwrap();
        assert_eq!(report.rows.len(), 12);
        let r1 = &report.rows[0];
        assert_eq!((r1.a, r1.b, r1.first_mismatch, r1.eta_coeff, r1.theta_coeff), (1, 23, Some(2), Some(-1), Some(0)));
        let r12 = &report.rows[11];
        assert_eq!((r12.a, r12.b), (12, 12));
        assert!(r12.first_mismatch.unwrap() <= 3);
        assert!(report.rows.iter().all(|r| r.first_mismatch.is_some_and(|n| n <= 50)));
        assert_eq!(report.solutions_12p, 0);
        assert!(eta_product(3, 20, 10).is_err());
    }

    #[test]
    fn exponent_scan_oracle() {
        // brute force over n, m in a range covering all small targets
        for (a, b) in [(1u64, 23u64), (5, 19), (12, 12)] {
            for target in [24u64, 48, 12 * 43, 24 * 43, 24 * 59] {
                let mut count = 0;
                for n in -40i64..=40 {
                    for m in -40i64..=40 {
                        let (u, v) = ((6 * n - 1).pow(2) as u64, (6 * m - 1).pow(2) as u64);
                        if a * u + b * v == target {
                            count += 1;
                        }
                    }
                }
                assert_eq!(exponent_solutions(a, b, target), count, "{a} {b} {target}");
            }
        }
    }
}
