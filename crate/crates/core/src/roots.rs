//! Simultaneous root finding (Aberth-Ehrlich) with residual-derived error radii.
//!
//! Roots are first computed in double precision. If a residual stays above the
//! requested tolerance the approximations are polished in fixed-point
//! multiprecision, doubling the working precision up to `max_retries` times.
//!
//! Each root carries a radius `d |f(z)| / |f'(z)|` (inflated by a rounding
//! bound): the closed disk of that radius around the approximation contains a
//! true root. When all disks are pairwise disjoint each contains exactly one.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::polyz::{build_f1n, build_fpn, IntPolynomial};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Bound on the relative backward error `|f(z)| / sum |c_i| |z|^i`.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Multiprecision retries, each doubling the precision.
    pub max_retries: u32,
    /// Precision of the first multiprecision attempt, in bits.
    pub base_precision: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { tol: 1e-9, max_sweeps: 1000, max_retries: 4, base_precision: 106 }
    }
}

impl SolverConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedRoot {
    pub re: f64,
    pub im: f64,
    /// Relative backward error at the approximation.
    pub residual: f64,
    /// A true root lies within this distance of `(re, im)`.
    pub radius: f64,
}

impl CertifiedRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.value().norm()
    }

    /// Interval guaranteed to contain the modulus of the nearby true root.
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let m = self.modulus();
        ((m - self.radius).max(0.0), m + self.radius)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexRootSet {
    pub roots: Vec<CertifiedRoot>,
    /// 53 for double precision, otherwise the multiprecision bits used.
    pub precision_bits: u32,
    pub sweeps: usize,
    /// All inclusion disks are pairwise disjoint.
    pub isolated: bool,
}

impl ComplexRootSet {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn max_radius(&self) -> f64 {
        self.roots.iter().map(|r| r.radius).fold(0.0, f64::max)
    }

    /// Relative difference between the product of root moduli and
    /// `|c_0 / c_d|`.
    pub fn vieta_relative_error(&self, f: &IntPolynomial) -> f64 {
        let d = self.roots.len();
        let c0 = big_to_f64(&f.coeff(0)).abs();
        let cd = big_to_f64(&f.coeff(d)).abs();
        let log_expected = c0.ln() - cd.ln();
        let log_product: f64 = self.roots.iter().map(|r| r.modulus().ln()).sum();
        (log_product - log_expected).exp_m1().abs()
    }

    /// Largest distance from a root's conjugate to the nearest root.
    pub fn conjugation_defect(&self) -> f64 {
        self.roots
            .iter()
            .map(|r| {
                let c = r.value().conj();
                self.roots.iter().map(|s| (s.value() - c).norm()).fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

/// Double-precision evaluation data at one point.
struct Eval {
    /// `f(z) / f'(z)`
    newton: Complex64,
    residual: f64,
    radius: f64,
}

fn horner_pair(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64, f64) {
    // returns f, f', sum |c_i||z|^i, sum i|c_i||z|^{i-1}
    let az = z.norm();
    let mut f = Complex64::zero();
    let mut df = Complex64::zero();
    let mut s = 0.0;
    let mut ds = 0.0;
    for &ci in c.iter().rev() {
        df = df * z + f;
        f = f * z + ci;
        ds = ds * az + s;
        s = s * az + ci.abs();
    }
    (f, df, s, ds)
}

fn evaluate(c: &[f64], z: Complex64) -> Eval {
    let d = (c.len() - 1) as f64;
    let gamma = 2.0 * d * f64::EPSILON;
    if z.norm() <= 1.0 {
        let (f, df, s, ds) = horner_pair(c, z);
        let num = f.norm() + gamma * s;
        let den = df.norm() - gamma * ds;
        let radius = if den > 0.0 { d * num / den } else { f64::INFINITY };
        let residual = if s > 0.0 { f.norm() / s } else { 0.0 };
        Eval { newton: f / df, residual, radius }
    } else {
        // reversed polynomial r(w) = w^d f(1/w)
        let w = z.inv();
        let rev: Vec<f64> = c.iter().rev().copied().collect();
        let (r, dr, s, ds) = horner_pair(&rev, w);
        let denom = r * d - w * dr;
        let num = r.norm() + gamma * s;
        let den = denom.norm() - gamma * (d * s + w.norm() * ds);
        let radius = if den > 0.0 { d * z.norm() * num / den } else { f64::INFINITY };
        let residual = if s > 0.0 { r.norm() / s } else { 0.0 };
        Eval { newton: z * r / denom, residual, radius }
    }
}

fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let ratio = (c[0] / c[d]).abs();
    let radius = if ratio > 0.0 && ratio.is_finite() { ratio.powf(1.0 / d as f64) } else { 1.0 };
    (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect()
}

fn aberth_f64(c: &[f64], max_sweeps: usize) -> (Vec<Complex64>, usize, bool) {
    let d = c.len() - 1;
    let mut z = initial_guesses(c);
    let mut done = vec![false; d];
    for sweep in 1..=max_sweeps {
        let mut all_done = true;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let w = evaluate(c, z[k]).newton;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let corr = w / (Complex64::new(1.0, 0.0) - w * s);
            if !corr.is_finite() {
                let kick = Complex64::from_polar(1e-3 * z[k].norm().max(1.0), k as f64);
                z[k] += kick;
                all_done = false;
                continue;
            }
            z[k] -= corr;
            if corr.norm() <= 4.0 * f64::EPSILON * z[k].norm().max(1e-300) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            return (z, sweep, true);
        }
    }
    (z, max_sweeps, false)
}

fn disks_disjoint(roots: &[CertifiedRoot]) -> bool {
    for (i, a) in roots.iter().enumerate() {
        if !a.radius.is_finite() {
            return false;
        }
        for b in &roots[i + 1..] {
            if (a.value() - b.value()).norm() <= a.radius + b.radius {
                return false;
            }
        }
    }
    true
}

/// Approximates all roots of `f` with relative backward error below `config.tol`.
pub fn solve_roots_with(f: &IntPolynomial, config: &SolverConfig) -> Result<ComplexRootSet> {
    let d = match f.degree() {
        None | Some(0) => return Err(Error::domain("root finding needs degree >= 1")),
        Some(d) => d,
    };
    if config.tol.is_nan() || config.tol <= 0.0 {
        return Err(Error::domain("tolerance must be positive"));
    }
    let c: Vec<f64> = f.coeffs().iter().map(big_to_f64).collect();
    let finite = c.iter().all(|x| x.is_finite());

    let mut start: Option<(Vec<Complex64>, usize)> = None;
    if finite {
        let (z, sweeps, converged) = if d == 1 {
            (vec![Complex64::new(-c[0] / c[1], 0.0)], 0, true)
        } else {
            aberth_f64(&c, config.max_sweeps)
        };
        let roots: Vec<CertifiedRoot> = z
            .iter()
            .map(|&zk| {
                let e = evaluate(&c, zk);
                CertifiedRoot { re: zk.re, im: zk.im, residual: e.residual, radius: e.radius }
            })
            .collect();
        if converged && roots.iter().all(|r| r.residual < config.tol) {
            let isolated = disks_disjoint(&roots);
            return Ok(ComplexRootSet { roots, precision_bits: 53, sweeps, isolated });
        }
        if z.iter().all(|v| v.is_finite()) {
            start = Some((z, sweeps));
        }
    }

    let (mut z0, sweeps0) = match start {
        Some(s) => s,
        None => {
            let scaled: Vec<f64> = c.iter().map(|x| if x.is_finite() { *x } else { f64::MAX }).collect();
            (initial_guesses(&scaled), 0)
        }
    };
    let mut precision = config.base_precision;
    for _ in 0..config.max_retries {
        let (roots, sweeps) = mp::polish(f, &z0, precision, config.max_sweeps.min(200));
        if roots.iter().all(|r| r.residual < config.tol) {
            let isolated = disks_disjoint(&roots);
            return Ok(ComplexRootSet {
                roots,
                precision_bits: precision,
                sweeps: sweeps0 + sweeps,
                isolated,
            });
        }
        z0 = roots.iter().map(|r| r.value()).collect();
        precision *= 2;
    }
    Err(Error::NoConvergence(format!(
        "degree {d}: residual tolerance {} not reached after {} precision doublings",
        config.tol, config.max_retries
    )))
}

pub fn solve_roots(f: &IntPolynomial, tol: f64) -> Result<ComplexRootSet> {
    solve_roots_with(f, &SolverConfig::with_tol(tol))
}

/// Moduli summary for `f_{1,n}` against `1 <= |a| < (n+1)^{2/n}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct F1nBoundReport {
    pub n: u64,
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub upper_bound: f64,
    /// `max | |a| - 1 |` over all roots.
    pub max_deviation_from_one: f64,
    pub max_radius: f64,
    pub isolated: bool,
    pub bound_ok: bool,
}

pub fn check_bounds_f1n(n: u64, tol: f64) -> Result<F1nBoundReport> {
    let f = build_f1n(n)?;
    let set = solve_roots(&f, tol)?;
    let upper = ((n + 1) as f64).powf(2.0 / n as f64);
    let mut bound_ok = true;
    for r in &set.roots {
        let (lo, hi) = r.modulus_bounds();
        if lo < 1.0 - tol || hi >= upper + tol {
            bound_ok = false;
        }
    }
    let moduli: Vec<f64> = set.roots.iter().map(|r| r.modulus()).collect();
    Ok(F1nBoundReport {
        n,
        min_modulus: moduli.iter().copied().fold(f64::INFINITY, f64::min),
        max_modulus: moduli.iter().copied().fold(0.0, f64::max),
        upper_bound: upper,
        max_deviation_from_one: moduli.iter().map(|m| (m - 1.0).abs()).fold(0.0, f64::max),
        max_radius: set.max_radius(),
        isolated: set.isolated,
        bound_ok,
    })
}

/// Moduli summary for `f_{p,N}` against `p <= |a| < p^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FpnBoundReport {
    pub p: u64,
    pub n_value: u64,
    pub degree: usize,
    /// `None` when `f_{p,N}` is constant and has no roots.
    pub min_modulus: Option<f64>,
    pub max_modulus: Option<f64>,
    pub bound_ok: bool,
}

pub fn check_bounds_fpn(p: u64, n_value: u64, tol: f64) -> Result<FpnBoundReport> {
    let f = build_fpn(p, n_value)?;
    let degree = f.degree().unwrap_or(0);
    if degree == 0 {
        return Ok(FpnBoundReport {
            p,
            n_value,
            degree,
            min_modulus: None,
            max_modulus: None,
            bound_ok: true,
        });
    }
    let set = solve_roots(&f, tol)?;
    let (lower, upper) = (p as f64, (p * p) as f64);
    let bound_ok = set.roots.iter().all(|r| {
        let (lo, hi) = r.modulus_bounds();
        lo >= lower - tol && hi < upper + tol
    });
    let moduli: Vec<f64> = set.roots.iter().map(|r| r.modulus()).collect();
    Ok(FpnBoundReport {
        p,
        n_value,
        degree,
        min_modulus: moduli.iter().copied().reduce(f64::min),
        max_modulus: moduli.iter().copied().reduce(f64::max),
        bound_ok,
    })
}

/// Fixed-point multiprecision Aberth polishing.
mod mp {
    use super::*;

    /// Complex number `(re + i im) / 2^prec`.
    #[derive(Clone, Debug)]
    struct Fx {
        re: BigInt,
        im: BigInt,
    }

    struct Ctx {
        prec: u32,
    }

    impl Ctx {
        fn to_fixed(&self, z: Complex64) -> Fx {
            Fx { re: self.fixed_f64(z.re), im: self.fixed_f64(z.im) }
        }

        fn fixed_f64(&self, x: f64) -> BigInt {
            if x == 0.0 || !x.is_finite() {
                return BigInt::zero();
            }
            // x = m * 2^e exactly
            let bits = x.abs().to_bits();
            let exp = ((bits >> 52) & 0x7ff) as i64;
            let (mant, e) = if exp == 0 {
                (bits & ((1 << 52) - 1), -1074)
            } else {
                ((bits & ((1 << 52) - 1)) | (1 << 52), exp - 1075)
            };
            let m = BigInt::from(mant);
            let shift = e + self.prec as i64;
            let v = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
            if x < 0.0 {
                -v
            } else {
                v
            }
        }

        fn int(&self, c: &BigInt) -> Fx {
            Fx { re: c << self.prec as usize, im: BigInt::zero() }
        }

        fn add(&self, a: &Fx, b: &Fx) -> Fx {
            Fx { re: &a.re + &b.re, im: &a.im + &b.im }
        }

        fn sub(&self, a: &Fx, b: &Fx) -> Fx {
            Fx { re: &a.re - &b.re, im: &a.im - &b.im }
        }

        fn mul(&self, a: &Fx, b: &Fx) -> Fx {
            let p = self.prec as usize;
            Fx {
                re: (&a.re * &b.re - &a.im * &b.im) >> p,
                im: (&a.re * &b.im + &a.im * &b.re) >> p,
            }
        }

        fn div(&self, a: &Fx, b: &Fx) -> Option<Fx> {
            let den = &b.re * &b.re + &b.im * &b.im;
            if den.is_zero() {
                return None;
            }
            let p = self.prec as usize;
            let re = (&a.re * &b.re + &a.im * &b.im) << p;
            let im = (&a.im * &b.re - &a.re * &b.im) << p;
            Some(Fx { re: re / &den, im: im / &den })
        }

        fn one(&self) -> Fx {
            Fx { re: BigInt::from(1) << self.prec as usize, im: BigInt::zero() }
        }

        /// |a| at scale 2^prec.
        fn abs(&self, a: &Fx) -> BigInt {
            (&a.re * &a.re + &a.im * &a.im).sqrt()
        }

        fn to_f64(&self, v: &BigInt) -> f64 {
            scaled_to_f64(v, self.prec as i64)
        }

        fn to_c64(&self, a: &Fx) -> Complex64 {
            Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
        }
    }

    /// `v / 2^scale` as f64 without intermediate overflow.
    fn scaled_to_f64(v: &BigInt, scale: i64) -> f64 {
        if v.is_zero() {
            return 0.0;
        }
        let bits = v.bits() as i64;
        let drop = (bits - 60).max(0);
        let top = (v.abs() >> drop as usize).to_f64().unwrap_or(0.0);
        let e = drop - scale;
        let mag = top * 2f64.powi(e.clamp(-1074, 1023) as i32);
        if v.is_negative() {
            -mag
        } else {
            mag
        }
    }

    struct MpEval {
        f: Fx,
        df: Fx,
        /// sum |c_i| |z|^i, sum i |c_i| |z|^{i-1}
        s: BigInt,
        ds: BigInt,
    }

    fn eval(ctx: &Ctx, coeffs: &[Fx], abs_coeffs: &[BigInt], z: &Fx) -> MpEval {
        let p = ctx.prec as usize;
        let az = ctx.abs(z);
        let mut f = Fx { re: BigInt::zero(), im: BigInt::zero() };
        let mut df = f.clone();
        let mut s = BigInt::zero();
        let mut ds = BigInt::zero();
        for (c, ac) in coeffs.iter().zip(abs_coeffs).rev() {
            df = ctx.add(&ctx.mul(&df, z), &f);
            f = ctx.add(&ctx.mul(&f, z), c);
            ds = ((&ds * &az) >> p) + &s;
            s = ((&s * &az) >> p) + ac;
        }
        MpEval { f, df, s, ds }
    }

    pub(super) fn polish(
        poly: &IntPolynomial,
        start: &[Complex64],
        prec: u32,
        max_sweeps: usize,
    ) -> (Vec<CertifiedRoot>, usize) {
        let ctx = Ctx { prec };
        let coeffs: Vec<Fx> = poly.coeffs().iter().map(|c| ctx.int(c)).collect();
        let abs_coeffs: Vec<BigInt> = poly.coeffs().iter().map(|c| c.abs() << prec as usize).collect();
        let d = coeffs.len() - 1;
        let mut z: Vec<Fx> = start.iter().map(|&v| ctx.to_fixed(v)).collect();
        let threshold = BigInt::from(1) << (prec as usize / 8).max(8);
        let mut sweeps = 0;
        for _ in 0..max_sweeps {
            sweeps += 1;
            let mut moved = false;
            for k in 0..d {
                let e = eval(&ctx, &coeffs, &abs_coeffs, &z[k]);
                let Some(w) = ctx.div(&e.f, &e.df) else { continue };
                let mut s = Fx { re: BigInt::zero(), im: BigInt::zero() };
                for j in 0..d {
                    if j != k {
                        if let Some(t) = ctx.div(&ctx.one(), &ctx.sub(&z[k], &z[j])) {
                            s = ctx.add(&s, &t);
                        }
                    }
                }
                let den = ctx.sub(&ctx.one(), &ctx.mul(&w, &s));
                let Some(corr) = ctx.div(&w, &den) else { continue };
                let mag = ctx.abs(&corr);
                let scale = ctx.abs(&z[k]).max(ctx.one().re);
                // relative correction above 2^(-prec) * 2^(prec/8)
                if (&mag << prec as usize) > &scale * &threshold {
                    moved = true;
                }
                z[k] = ctx.sub(&z[k], &corr);
            }
            if !moved {
                break;
            }
        }
        let dd = BigInt::from(d);
        let roots = z
            .iter()
            .map(|zk| {
                let e = eval(&ctx, &coeffs, &abs_coeffs, zk);
                let fabs = ctx.abs(&e.f);
                let dfabs = ctx.abs(&e.df);
                // rounding slack: d ulps of the magnitude sums
                let slack_f = (&e.s * &dd) >> (prec as usize - 4);
                let slack_df = (&e.ds * &dd) >> (prec as usize - 4);
                let residual = if e.s.is_zero() {
                    0.0
                } else {
                    let ratio = ((&fabs + &slack_f) << prec as usize) / &e.s;
                    ctx.to_f64(&ratio)
                };
                let den = &dfabs - &slack_df;
                let radius = if den.is_positive() {
                    let r = (((&fabs + &slack_f) * &dd) << prec as usize) / den;
                    ctx.to_f64(&r)
                } else {
                    f64::INFINITY
                };
                let v = ctx.to_c64(zk);
                CertifiedRoot { re: v.re, im: v.im, residual, radius }
            })
            .collect();
        (roots, sweeps)
    }
}
