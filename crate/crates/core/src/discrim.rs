//! Resultants and discriminants by fraction-free elimination of the Sylvester
//! matrix, the closed form for `D(f_{1,n})`, and quadratic subfields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::arith::{factor, squarefree_from_factorization, Factorization};
use crate::polyz::{build_f1n, IntPolynomial};
use crate::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree k): k shifted rows of
/// `f` followed by m shifted rows of `g`, coefficients from the top degree down.
pub fn sylvester_matrix(f: &IntPolynomial, g: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let m = f.degree().unwrap_or(0);
    let k = g.degree().unwrap_or(0);
    let size = m + k;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(f, m, k), (g, k, m)] {
        for shift in 0..copies {
            let mut row = vec![BigInt::zero(); size];
            for (j, c) in poly.coeffs().iter().rev().enumerate() {
                row[shift + j] = c.clone();
            }
            debug_assert_eq!(poly.coeffs().len(), deg + 1);
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `Res(f, g)`. A constant argument `c` contributes `c^{deg}` of the other.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt> {
    let (Some(m), Some(k)) = (f.degree(), g.degree()) else {
        return Err(Error::domain("resultant of the zero polynomial"));
    };
    if m == 0 {
        return Ok(Pow::pow(&f.coeff(0), k));
    }
    if k == 0 {
        return Ok(Pow::pow(&g.coeff(0), m));
    }
    Ok(bareiss_determinant(sylvester_matrix(f, g)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub disc: BigInt,
    pub factorization: Factorization,
    /// Squarefree `d` with `disc = s^2 d`; sign carried.
    pub squarefree_part: BigInt,
    pub is_square: bool,
    /// Radicand of the quadratic subfield `Q(sqrt(d))`, `None` when the
    /// discriminant is a perfect square.
    pub quad_field: Option<BigInt>,
    /// False when a large cofactor could not be split; `squarefree_part` then
    /// treats the cofactor as squarefree.
    pub factorization_complete: bool,
}

fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

pub fn discriminant_report(disc: BigInt) -> DiscriminantReport {
    let factorization = factor(&disc);
    let (squarefree_part, _) = squarefree_from_factorization(&factorization);
    let is_square = is_perfect_square(&disc);
    DiscriminantReport {
        quad_field: (!is_square).then(|| squarefree_part.clone()),
        factorization_complete: factorization.is_complete(),
        squarefree_part,
        is_square,
        disc,
        factorization,
    }
}

/// Exact discriminant `(-1)^{d(d-1)/2} Res(f, f') / lc(f)`.
pub fn discriminant_value(f: &IntPolynomial) -> Result<BigInt> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::domain("discriminant needs degree >= 1")),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let lc = f.leading().expect("nonzero");
    let (q, rem) = r.div_rem(lc);
    if !rem.is_zero() {
        return Err(Error::invariant("resultant not divisible by the leading coefficient"));
    }
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

pub fn discriminant(f: &IntPolynomial) -> Result<DiscriminantReport> {
    Ok(discriminant_report(discriminant_value(f)?))
}

fn pow_i(base: i64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(base), e)
}

fn neg_one_pow(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `(-1)^{(n-1)(n+2)/2} 2 n^{n-3} (n+1)^{n-2}`. For `n = 2` the negative power
/// is evaluated in the rationals and the (integral) result returned.
pub fn closed_form_disc_f1n(n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::domain(format!("n = {n}, need n >= 2")));
    }
    let sign = neg_one_pow((n - 1) * (n + 2) / 2);
    if n == 2 {
        // 2 * n^{-1} * (n+1)^0
        let v = BigRational::new(sign * 2, BigInt::from(n));
        if !v.is_integer() {
            return Err(Error::invariant("closed form not integral at n = 2"));
        }
        return Ok(v.to_integer());
    }
    Ok(sign * 2 * pow_i(n as i64, n - 3) * pow_i(n as i64 + 1, n - 2))
}

/// The quadratic subfield `Q(sqrt(D(f_{1,n})))` in reduced and case-table form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticSubfield {
    pub n: u64,
    /// Squarefree radicand, `None` when the discriminant is a perfect square.
    pub radicand: Option<BigInt>,
    /// Radicand as given by the residue of `n` mod 4 before reduction:
    /// `-2l`, `2l+1`, `2l+1`, `-2(l+1)` for `n = 4l, 4l+1, 4l+2, 4l+3`.
    pub stated_radicand: BigInt,
    /// The stated radicand is not already squarefree.
    pub differs: bool,
}

impl QuadraticSubfield {
    pub fn is_degenerate(&self) -> bool {
        self.radicand.is_none()
    }
}

pub fn stated_radicand(n: u64) -> BigInt {
    let l = (n / 4) as i64;
    BigInt::from(match n % 4 {
        0 => -2 * l,
        1 | 2 => 2 * l + 1,
        _ => -2 * (l + 1),
    })
}

pub fn quadratic_subfield(n: u64) -> Result<QuadraticSubfield> {
    if n < 3 {
        return Err(Error::domain(format!("n = {n}, need n >= 3")));
    }
    let report = discriminant_report(closed_form_disc_f1n(n)?);
    let stated = stated_radicand(n);
    let (stated_reduced, _) = crate::arith::squarefree_part(&stated);
    if stated_reduced != report.squarefree_part {
        return Err(Error::invariant(format!(
            "n = {n}: reduced case radicand {stated_reduced} disagrees with {}",
            report.squarefree_part
        )));
    }
    Ok(QuadraticSubfield {
        n,
        differs: stated_reduced != stated,
        radicand: report.quad_field,
        stated_radicand: stated,
    })
}

/// `D(f_{1,n})` assembled from the four residue classes of `n` mod 4:
///
/// * `n = 4l`:   `-2l * 4 * (4l)^{4l-4} * (4l+1)^{4l-2}`
/// * `n = 4l+1`: `{2^{2l} (4l+1)^{2l-1} (2l+1)^{2l}}^2 / (2l+1)`
/// * `n = 4l+2`: `{2 (2l+1)(4l+3)}^{4l} / (2l+1)`
/// * `n = 4l+3`: `-2(l+1) * 4^{4l+1} (4l+3)^{4l} (l+1)^{4l}`
pub fn case_decomposition(n: u64) -> Result<BigInt> {
    if n < 4 {
        return Err(Error::domain(format!("n = {n}, the case table starts at n = 4")));
    }
    let l = n / 4;
    let li = l as i64;
    let v = match n % 4 {
        0 => -2 * li * 4 * pow_i(4 * li, 4 * l - 4) * pow_i(4 * li + 1, 4 * l - 2),
        1 => {
            let base = pow_i(2, 2 * l) * pow_i(4 * li + 1, 2 * l - 1) * pow_i(2 * li + 1, 2 * l);
            exact_div(&base * &base, 2 * li + 1)?
        }
        2 => exact_div(pow_i(2 * (2 * li + 1) * (4 * li + 3), 4 * l), 2 * li + 1)?,
        _ => -2 * (li + 1) * pow_i(4, 4 * l + 1) * pow_i(4 * li + 3, 4 * l) * pow_i(li + 1, 4 * l),
    };
    Ok(v)
}

/// The `n = 4l+1` line with the exponent of `4l+1` taken as `l-1`; it only
/// agrees with the discriminant when `l = 0`.
pub fn case_4l1_with_exponent_l_minus_1(l: u64) -> Result<BigRational> {
    if l == 0 {
        return Err(Error::domain("l >= 1"));
    }
    let li = l as i64;
    let base = pow_i(2, 2 * l) * pow_i(4 * li + 1, l - 1) * pow_i(2 * li + 1, 2 * l);
    Ok(BigRational::new(&base * &base, BigInt::from(2 * li + 1)))
}

fn exact_div(a: BigInt, b: i64) -> Result<BigInt> {
    let (q, r) = a.div_rem(&BigInt::from(b));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::invariant("inexact division in case table"))
    }
}

/// `Res(g_{1,n}, g'_{1,n}) = (-1)^{n-1} n^{n-1} (n+1)^n / 2`.
pub fn closed_form_resultant_g1n(n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::domain("n >= 2"));
    }
    let v = neg_one_pow(n - 1) * pow_i(n as i64, n - 1) * pow_i(n as i64 + 1, n);
    exact_div(v, 2)
}

/// `D(g_{1,n}) = {n(n+1)/2}^2 D(f_{1,n})`.
pub fn disc_g1n_from_f1n(n: u64) -> Result<BigInt> {
    let t = BigInt::from(n * (n + 1) / 2);
    Ok(&t * &t * closed_form_disc_f1n(n)?)
}

/// `D(mf_{1,3}) = -m(m+2)`.
pub fn closed_form_disc_mf13(m: u64) -> BigInt {
    let m = BigInt::from(m);
    -(&m * (&m + 2u32))
}

/// `D(mf_{1,4}) = -m^2 (m+1)(m+2)(m+3)^2 / 6`.
pub fn closed_form_disc_mf14(m: u64) -> BigInt {
    let m = BigInt::from(m);
    let m3 = &m + 3u32;
    -(&m * &m * (&m + 1u32) * (&m + 2u32) * &m3 * &m3) / 6
}

/// Discriminants of `f_{1,n}` for every `n` in `lo..=hi` by elimination.
pub fn f1n_discriminants(lo: u64, hi: u64) -> Result<Vec<(u64, BigInt)>> {
    use rayon::prelude::*;
    (lo.max(2)..=hi)
        .into_par_iter()
        .map(|n| Ok((n, discriminant_value(&build_f1n(n)?)?)))
        .collect()
}
