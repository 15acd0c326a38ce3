//! Dense polynomials over the integers and constructors for the polynomial
//! families: `f_{1,n}`, `g_{1,n} = (x-1) f_{1,n}`, the binomial family
//! `_m f_{1,n}` and the digit-quotient polynomials `f_{p,N}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::binomial;
use crate::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are trimmed on
/// construction so the last entry, if any, is the nonzero leading coefficient.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content. The leading coefficient keeps its sign.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Synthetic division by `x - root`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, root: &BigInt) -> (Self, BigInt) {
        if self.coeffs.is_empty() {
            return (Self::zero(), BigInt::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut quotient = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (Self::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// `f(x + 1)` by repeated synthetic shifting (Horner-style Taylor shift).
    pub fn shift_by_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1].clone();
                c[j] += next;
            }
        }
        Self::new(c)
    }

    /// `x^deg * f(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Base-`p` expansion `N = a_0 + a_1 p + ... + a_n p^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitExpansion {
    pub base: u64,
    /// `digits[i] = a_i`, with `a_0 != 0` and `a_n != 0`.
    pub digits: Vec<u64>,
    pub value: u64,
}

impl DigitExpansion {
    /// `a_0 + a_1 x + ... + a_n x^n` as a polynomial.
    pub fn digit_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.digits.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn reconstruct(&self) -> BigInt {
        self.digit_polynomial().eval(&BigInt::from(self.base))
    }
}

/// `f_{1,n}(x) = x^{n-1} + 2x^{n-2} + ... + (n-1)x + n`.
pub fn build_f1n(n: u64) -> Result<IntPolynomial> {
    if n < 2 {
        return Err(Error::domain(format!("f_(1,n) needs n >= 2, got {n}")));
    }
    // coefficient of x^i is n - i
    Ok(IntPolynomial::new((0..n).map(|i| BigInt::from(n - i)).collect()))
}

/// `g_{1,n}(x) = x^n + x^{n-1} + ... + x - n`.
pub fn build_g1n(n: u64) -> Result<IntPolynomial> {
    if n < 2 {
        return Err(Error::domain(format!("g_(1,n) needs n >= 2, got {n}")));
    }
    let mut c = vec![BigInt::one(); n as usize + 1];
    c[0] = -BigInt::from(n);
    Ok(IntPolynomial::new(c))
}

/// `_m f_{1,n}(x) = sum_{i=-1}^{n-2} C(m+i, i+1) x^{n-2-i}`.
pub fn build_mf1n(m: u64, n: u64) -> Result<IntPolynomial> {
    if m < 2 || n < 3 {
        return Err(Error::domain(format!(
            "_m f_(1,n) needs m >= 2 and n >= 3, got m={m}, n={n}"
        )));
    }
    let (m, n) = (m as i64, n as i64);
    let mut c = vec![BigInt::zero(); n as usize];
    for i in -1..=(n - 2) {
        c[(n - 2 - i) as usize] = binomial(m + i, i + 1);
    }
    Ok(IntPolynomial::new(c))
}

/// Base-`p` digits of `n_value`. Accepts `n_value < p` (a single digit).
pub fn expand_digits(p: u64, n_value: u64) -> Result<DigitExpansion> {
    if p < 2 {
        return Err(Error::domain(format!("base must be >= 2, got {p}")));
    }
    if n_value == 0 {
        return Err(Error::domain("N must be positive"));
    }
    if n_value.is_multiple_of(p) {
        return Err(Error::domain(format!("{p} divides N = {n_value}")));
    }
    let mut digits = Vec::new();
    let mut rest = n_value;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    Ok(DigitExpansion { base: p, digits, value: n_value })
}

/// `f_{p,N}(x) = (a_n x^n + ... + a_1 x + a_0 - N) / (x - p)`.
pub fn build_fpn(p: u64, n_value: u64) -> Result<IntPolynomial> {
    let expansion = expand_digits(p, n_value)?;
    let shifted = &expansion.digit_polynomial() - &IntPolynomial::constant(n_value);
    let (quotient, remainder) = shifted.div_linear(&BigInt::from(p));
    if !remainder.is_zero() {
        return Err(Error::invariant(format!(
            "digit polynomial of {n_value} minus {n_value} not divisible by x - {p}"
        )));
    }
    Ok(quotient)
}

/// `f(x + 1)`.
pub fn shift_by_one(f: &IntPolynomial) -> IntPolynomial {
    f.shift_by_one()
}

/// Checks `C(n+1, k-1) = sum_{j=1}^{k} j C(n-j, k-j)`: the coefficient of
/// `x^{n-k}` in `f_{1,n}(x+1)` written two ways. A trailing `j = k+1` term would
/// carry `C(n-k-1, -1) = 0` and does not contribute.
pub fn binom_identity_check(n: u64, k: u64) -> bool {
    let (n, k) = (n as i64, k as i64);
    let lhs = binomial(n + 1, k - 1);
    let rhs: BigInt = (1..=k + 1).map(|j| BigInt::from(j) * binomial(n - j, k - j)).sum();
    lhs == rhs
}

/// Horner evaluation of `f` at `x`.
pub fn poly_eval(f: &IntPolynomial, x: &BigInt) -> BigInt {
    f.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    /// Expand `sum c_i (x+1)^i` term by term with explicit binomial powers.
    fn shift_oracle(f: &IntPolynomial) -> IntPolynomial {
        let x_plus_one = p(&[1, 1]);
        let mut acc = IntPolynomial::zero();
        let mut power = p(&[1]);
        for c in f.coeffs() {
            acc = &acc + &(&power * &IntPolynomial::constant(c.clone()));
            power = &power * &x_plus_one;
        }
        acc
    }

    /// `sum_{k>=0} C(m+k-1, k) x^k` truncated, computed by repeated convolution
    /// with the all-ones series.
    fn power_of_geometric(m: usize, len: usize) -> Vec<BigInt> {
        let mut series = vec![BigInt::zero(); len];
        series[0] = BigInt::one();
        for _ in 0..m {
            let mut next = vec![BigInt::zero(); len];
            for i in 0..len {
                for j in 0..=i {
                    next[i] += &series[j];
                }
            }
            series = next;
        }
        series
    }

    #[test]
    fn f1n_examples() {
        assert_eq!(build_f1n(4).unwrap(), p(&[4, 3, 2, 1]));
        assert_eq!(build_f1n(5).unwrap(), p(&[5, 4, 3, 2, 1]));
        assert_eq!(build_f1n(2).unwrap(), p(&[2, 1]));
        assert_eq!(build_f1n(4).unwrap().to_string(), "x^3 + 2x^2 + 3x + 4");
        assert!(matches!(build_f1n(1), Err(Error::Domain(_))));
    }

    #[test]
    fn g1n_examples() {
        assert_eq!(build_g1n(4).unwrap(), p(&[-4, 1, 1, 1, 1]));
        assert_eq!(build_g1n(2).unwrap(), p(&[-2, 1, 1]));
        assert_eq!(build_g1n(9).unwrap(), &p(&[-1, 1]) * &build_f1n(9).unwrap());
        assert!(build_g1n(0).is_err());
    }

    #[test]
    fn g1n_is_x_minus_one_times_f1n() {
        let x_minus_one = p(&[-1, 1]);
        for n in 2..=300 {
            assert_eq!(build_g1n(n).unwrap(), &x_minus_one * &build_f1n(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn mf1n_examples() {
        assert_eq!(build_mf1n(2, 3).unwrap(), p(&[3, 2, 1]));
        assert_eq!(build_mf1n(2, 4).unwrap(), build_f1n(4).unwrap());
        assert_eq!(build_mf1n(3, 4).unwrap(), p(&[10, 6, 3, 1]));
        assert!(build_mf1n(1, 4).is_err());
        assert!(build_mf1n(2, 2).is_err());
    }

    #[test]
    fn mf1n_matches_truncated_geometric_power() {
        for m in 2..=20usize {
            let series = power_of_geometric(m, 100);
            for n in 3..=100u64 {
                let f = build_mf1n(m as u64, n).unwrap();
                assert_eq!(f.degree(), Some(n as usize - 1));
                assert!(f.is_monic());
                // coefficient of x^{n-1-k} is the k-th series coefficient
                for k in 0..n as usize {
                    assert_eq!(f.coeff(n as usize - 1 - k), series[k], "m={m} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn m_equals_two_recovers_f1n() {
        for n in 3..=60 {
            assert_eq!(build_mf1n(2, n).unwrap(), build_f1n(n).unwrap());
        }
    }

    #[test]
    fn digit_expansions() {
        assert_eq!(expand_digits(2, 5).unwrap().digits, vec![1, 0, 1]);
        assert_eq!(expand_digits(3, 10).unwrap().digits, vec![1, 0, 1]);
        assert_eq!(expand_digits(10, 1234).unwrap().digits, vec![4, 3, 2, 1]);
        assert_eq!(expand_digits(7, 3).unwrap().digits, vec![3]);
        assert!(matches!(expand_digits(3, 9), Err(Error::Domain(_))));
        assert!(expand_digits(1, 9).is_err());
        assert!(expand_digits(3, 0).is_err());
    }

    #[test]
    fn fpn_examples() {
        assert_eq!(build_fpn(2, 5).unwrap(), p(&[2, 1]));
        assert_eq!(build_fpn(3, 10).unwrap(), p(&[3, 1]));
        assert_eq!(build_fpn(2, 7).unwrap(), p(&[3, 1]));
        assert_eq!(build_fpn(2, 11).unwrap(), p(&[5, 2, 1]));
    }

    #[test]
    fn fpn_reconstruction_is_exact() {
        for p_base in [2u64, 3, 5, 7, 10, 12] {
            for n_value in (1..3000u64).filter(|v| v % p_base != 0) {
                let e = expand_digits(p_base, n_value).unwrap();
                assert_eq!(e.reconstruct(), BigInt::from(n_value));
                let q = build_fpn(p_base, n_value).unwrap();
                let lhs = &(&p(&[-(p_base as i64), 1]) * &q) + &IntPolynomial::constant(n_value);
                assert!((&lhs - &e.digit_polynomial()).is_zero());
            }
        }
    }

    #[test]
    fn shift_examples() {
        let f4 = build_f1n(4).unwrap();
        assert_eq!(shift_by_one(&f4), p(&[10, 10, 5, 1]));
        assert_eq!(shift_by_one(&f4), shift_oracle(&f4));
        assert_eq!(shift_by_one(&p(&[7])), p(&[7]));
        assert_eq!(shift_by_one(&p(&[0, 1])), p(&[1, 1]));
        assert_eq!(shift_by_one(&IntPolynomial::zero()), IntPolynomial::zero());
    }

    #[test]
    fn shifted_f1n_has_binomial_coefficients() {
        for n in 2..=300u64 {
            let s = shift_by_one(&build_f1n(n).unwrap());
            let d = n as usize - 1;
            for k in 1..n {
                // coefficient of x^{n-k}
                assert_eq!(s.coeff(n as usize - k as usize), binomial(n as i64 + 1, k as i64 - 1));
            }
            assert_eq!(s.coeff(0), BigInt::from(n * (n + 1) / 2));
            assert_eq!(s.degree(), Some(d));
        }
    }

    #[test]
    fn binomial_identity_examples() {
        assert!(binom_identity_check(4, 2));
        assert!(binom_identity_check(4, 3));
        assert!(binom_identity_check(100, 57));
    }

    #[test]
    fn binomial_identity_exhaustive() {
        for n in 4..=100 {
            for k in 2..n {
                assert!(binom_identity_check(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let f4 = build_f1n(4).unwrap();
        assert_eq!(poly_eval(&f4, &BigInt::one()), BigInt::from(10));
        assert_eq!(poly_eval(&f4, &BigInt::zero()), BigInt::from(4));
        assert_eq!(poly_eval(&build_f1n(5).unwrap(), &BigInt::from(-1)), BigInt::from(3));
        for n in 2..200u64 {
            assert_eq!(build_f1n(n).unwrap().eval(&BigInt::one()), BigInt::from(n * (n + 1) / 2));
        }
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p(&[6, -4, 2]);
        assert_eq!(f.content(), BigInt::from(2));
        assert_eq!(f.primitive_part(), p(&[3, -2, 1]));
        assert_eq!(p(&[0, 0, 0]), IntPolynomial::zero());
        assert_eq!(p(&[-1, 0, -3]).to_string(), "-3x^2 - 1");
    }

    proptest::proptest! {
        #[test]
        fn shift_matches_oracle(c in proptest::collection::vec(-50i64..50, 0..12)) {
            let f = p(&c);
            proptest::prop_assert_eq!(shift_by_one(&f), shift_oracle(&f));
        }

        #[test]
        fn div_linear_reconstructs(c in proptest::collection::vec(-50i64..50, 1..10), r in -6i64..6) {
            let f = p(&c);
            let (q, rem) = f.div_linear(&BigInt::from(r));
            let back = &(&q * &p(&[-r, 1])) + &IntPolynomial::constant(rem.clone());
            proptest::prop_assert_eq!(back, f.clone());
            proptest::prop_assert_eq!(rem, f.eval(&BigInt::from(r)));
        }
    }
}
