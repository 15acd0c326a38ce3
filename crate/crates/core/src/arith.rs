//! Integer utilities: prime sieving, deterministic primality, exact binomials
//! and factorization of discriminant-sized integers.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// Trial division bound used before switching to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Cofactors above this many bits are not attacked with Pollard rho.
pub const RHO_MAX_BITS: u64 = 96;

/// All primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo {
        return Vec::new();
    }
    primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect()
}

/// Lazily yields primes in increasing order starting at 2.
pub fn prime_iter() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// If `n = p^k` with `p` prime and `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((m, 1))
}

/// Exact binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
///
/// Uses the multiplicative formula; every intermediate quotient is exact.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Miller-Rabin over arbitrary precision. Deterministic below 3.3e24,
/// probabilistic (20 prime bases) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    for &p in &BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'outer: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Whether [`is_probable_prime`] is a proof for this size of input.
pub fn primality_is_deterministic(n: &BigUint) -> bool {
    // The first 13 prime bases are exact below 3317044064679887385961981.
    n < &"3317044064679887385961981".parse::<BigUint>().unwrap()
}

fn pollard_brent(n: &BigUint, seed: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32 + seed as u32);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut g = one.clone();
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Prime factorization of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// -1, 0 or 1.
    pub sign: i8,
    /// Prime factors with exponents, ascending.
    pub factors: BTreeMap<BigUint, u32>,
    /// Part that could not be split. `None` means the factorization is complete.
    pub unfactored: Option<BigUint>,
    /// Some listed prime factor passed only a probabilistic primality test.
    pub probable: bool,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.unfactored.is_none()
    }
}

fn factor_cofactor(
    n: BigUint,
    factors: &mut BTreeMap<BigUint, u32>,
    unfactored: &mut BigUint,
    probable: &mut bool,
) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        if !primality_is_deterministic(&n) {
            *probable = true;
        }
        *factors.entry(n).or_insert(0) += 1;
        return;
    }
    let root = n.sqrt();
    if &root * &root == n {
        factor_cofactor(root.clone(), factors, unfactored, probable);
        factor_cofactor(root, factors, unfactored, probable);
        return;
    }
    if n.bits() > RHO_MAX_BITS {
        *unfactored *= n;
        return;
    }
    for seed in 1..20u64 {
        if let Some(d) = pollard_brent(&n, seed) {
            let other = &n / &d;
            factor_cofactor(d, factors, unfactored, probable);
            factor_cofactor(other, factors, unfactored, probable);
            return;
        }
    }
    *unfactored *= n;
}

/// Factor `n` by trial division to [`TRIAL_DIVISION_BOUND`], then Pollard-Brent
/// on cofactors of at most [`RHO_MAX_BITS`] bits. Larger composite cofactors are
/// left in [`Factorization::unfactored`].
pub fn factor(n: &BigInt) -> Factorization {
    let sign = match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    let mut factors = BTreeMap::new();
    if n.is_zero() {
        return Factorization { sign, factors, unfactored: None, probable: false };
    }
    let mut m = n.magnitude().clone();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_BOUND {
        if BigUint::from(p * p) > m {
            break;
        }
        let mut k = 0;
        loop {
            let (q, r) = m.div_rem(&BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            m = q;
            k += 1;
        }
        if k > 0 {
            factors.insert(BigUint::from(p), k);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut unfactored = BigUint::one();
    let mut probable = false;
    if !m.is_one() {
        if BigUint::from(p) * BigUint::from(p) > m {
            *factors.entry(m).or_insert(0) += 1;
        } else {
            factor_cofactor(m, &mut factors, &mut unfactored, &mut probable);
        }
    }
    Factorization {
        sign,
        factors,
        unfactored: if unfactored.is_one() { None } else { Some(unfactored) },
        probable,
    }
}

/// Squarefree part of a nonzero integer, sign carried: the unique squarefree
/// `s` with `n = k^2 * s`. The flag is false when an unfactored cofactor had to
/// be assumed squarefree.
pub fn squarefree_part(n: &BigInt) -> (BigInt, bool) {
    let f = factor(n);
    squarefree_from_factorization(&f)
}

pub(crate) fn squarefree_from_factorization(f: &Factorization) -> (BigInt, bool) {
    let mut part = BigUint::one();
    for (p, &e) in &f.factors {
        if e % 2 == 1 {
            part *= p;
        }
    }
    let mut exact = true;
    if let Some(c) = &f.unfactored {
        let r = c.sqrt();
        if &(&r * &r) != c {
            part *= c;
            exact = false;
        }
    }
    let part = BigInt::from_biguint(if f.sign < 0 { Sign::Minus } else { Sign::Plus }, part);
    (part, exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_counts() {
        assert_eq!(primes_up_to(100).len(), 25);
        assert_eq!(primes_up_to(100_000).len(), 9592);
        assert_eq!(primes_in(10, 20), vec![11, 13, 17, 19]);
        assert!(primes_in(24, 28).is_empty());
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let sieve = primes_up_to(20_000);
        let mr: Vec<u64> = (0..=20_000).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(
            binomial(100, 50),
            "100891344545564193334812497256".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn factor_small_and_signed() {
        let f = factor(&BigInt::from(-200));
        assert_eq!(f.sign, -1);
        assert!(f.is_complete());
        let got: Vec<(u64, u32)> =
            f.factors.iter().map(|(p, &e)| (p.to_u64().unwrap(), e)).collect();
        assert_eq!(got, vec![(2, 3), (5, 2)]);
        assert_eq!(squarefree_part(&BigInt::from(-200)), (BigInt::from(-2), true));
        assert_eq!(squarefree_part(&BigInt::from(10800)), (BigInt::from(3), true));
        assert_eq!(squarefree_part(&BigInt::from(1)), (BigInt::from(1), true));
    }

    #[test]
    fn factor_semiprime_beyond_trial_division() {
        // 1000003 * 1000033, both above the trial division bound
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factor(&n);
        assert!(f.is_complete());
        assert_eq!(f.factors.len(), 2);
        let sq = BigInt::from(1_000_003u64).pow(2) * BigInt::from(7);
        assert_eq!(squarefree_part(&sq).0, BigInt::from(7));
    }

    #[test]
    fn large_cofactor_is_flagged() {
        // product of two ~70-bit primes: 140 bits, beyond the rho bound
        let p: BigUint = "1180591620717411303449".parse().unwrap(); // 2^70 + 25, prime
        let q: BigUint = "1180591620717411303491".parse().unwrap(); // next prime
        assert!(is_probable_prime(&p) && is_probable_prime(&q));
        let n = BigInt::from(p * q);
        let f = factor(&n);
        assert!(!f.is_complete());
        let (_, exact) = squarefree_part(&n);
        assert!(!exact);
    }

    proptest::proptest! {
        #[test]
        fn squarefree_part_strips_squares(d in 1u64..1_000_000, s in proptest::sample::select(vec![-7i64, -2, -1, 1, 2, 3, 5, 6, 15, 30, 101, 2 * 3 * 5 * 7 * 11])) {
            let n = BigInt::from(d) * BigInt::from(d) * BigInt::from(s);
            let (part, exact) = squarefree_part(&n);
            proptest::prop_assert!(exact);
            proptest::prop_assert_eq!(part, BigInt::from(s));
        }
    }
}
