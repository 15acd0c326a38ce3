//! One function per subcommand. Each returns a [`Report`]; violated
//! properties are recorded in it rather than returned as errors.

use std::fmt::Display;

use serde_json::{json, Value};

use nacf_core::arith::Factorization;
use nacf_core::discrim::{
    closed_form_disc_f1n, closed_form_disc_mf13, closed_form_disc_mf14, discriminant, quadratic_subfield,
};
use nacf_core::galois::{classify_galois_with, table1_expected, verify_table1_with, GaloisConfig};
use nacf_core::irred::{certify, conjecture_scan, tally, IrreducibilityCertificate, Verdict};
use nacf_core::polyz::{binom_identity_check, build_f1n, build_mf1n};
use nacf_core::qfield::{eta_product_mismatch, fact_cube_mod5, fact_xy_mod3, theorem51_equivalence, theta_coefficients};
use nacf_core::roots::{check_bounds_f1n, check_bounds_fpn, solve_roots};
use nacf_core::{Error, Result};

use crate::config::RunConfig;
use crate::report::Report;

/// Exact integers travel as decimal strings.
fn exact(x: &impl Display) -> Value {
    Value::String(x.to_string())
}

fn display_opt(x: Option<impl Display>) -> Value {
    x.map_or(Value::Null, |v| exact(&v))
}

fn ser(x: impl serde::Serialize) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn factorization_json(f: &Factorization) -> Value {
    json!({
        "sign": f.sign,
        "factors": f.factors.iter().map(|(p, e)| json!([exact(p), e])).collect::<Vec<_>>(),
        "unfactored": display_opt(f.unfactored.as_ref()),
        "probable": f.probable,
    })
}

fn certificate_json(c: &IrreducibilityCertificate) -> Value {
    json!({
        "kind": ser(c.kind),
        "verdict": ser(c.verdict),
        "applicable": ser(&c.applicable),
        "shift_prime": c.shift_prime,
        "prime_power": c.prime_power,
        "sieve_primes": c.sieve.as_ref().map(|s| s.primes.clone()),
        "sieve_cycle_types": c.sieve.as_ref().map(|s| s.cycle_types.iter().map(|t| t.to_string()).collect::<Vec<_>>()),
        "sieve_surviving": c.sieve.as_ref().map(|s| s.surviving.clone()),
        "discriminant": display_opt(c.discriminant.as_ref()),
        "rational_root": display_opt(c.rational_root.as_ref()),
    })
}

fn family(n: u64, m: Option<u64>) -> Result<nacf_core::IntPolynomial> {
    match m {
        Some(m) => build_mf1n(m, n),
        None => build_f1n(n),
    }
}

pub fn roots(n: u64, cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("roots");
    r.param("n", n).param("tol", cfg.tol);
    let bounds = check_bounds_f1n(n, cfg.tol)?;
    let set = solve_roots(&build_f1n(n)?, cfg.tol)?;
    for root in &set.roots {
        let (lo, hi) = root.modulus_bounds();
        r.rows.push(json!({
            "re": root.re, "im": root.im, "modulus": root.modulus(),
            "modulus_lo": lo, "modulus_hi": hi, "radius": root.radius, "residual": root.residual,
        }));
    }
    r.summary("degree", set.degree())
        .summary("min_modulus", bounds.min_modulus)
        .summary("max_modulus", bounds.max_modulus)
        .summary("upper_bound", bounds.upper_bound)
        .summary("max_deviation_from_one", bounds.max_deviation_from_one)
        .summary("max_radius", bounds.max_radius)
        .summary("isolated", bounds.isolated)
        .summary("precision_bits", set.precision_bits)
        .summary("bound_ok", bounds.bound_ok);
    if !bounds.bound_ok {
        r.violation(json!({"n": n, "property": "1 <= |root| < (n+1)^(2/n)",
            "min_modulus": bounds.min_modulus, "max_modulus": bounds.max_modulus}));
    }
    Ok(r)
}

pub fn bounds_fpn(p: u64, n_value: u64, cfg: &RunConfig) -> Result<Report> {
    let mut r = Report::new("bounds-fpn");
    r.param("p", p).param("N", n_value).param("tol", cfg.tol);
    let b = check_bounds_fpn(p, n_value, cfg.tol)?;
    r.summary("degree", b.degree)
        .summary("min_modulus", b.min_modulus)
        .summary("max_modulus", b.max_modulus)
        .summary("bound_ok", b.bound_ok);
    if !b.bound_ok {
        r.violation(json!({"p": p, "N": n_value, "property": "roots of f_(p,N) in the bounded annulus",
            "min_modulus": b.min_modulus, "max_modulus": b.max_modulus}));
    }
    Ok(r)
}

pub fn irreducible(n: u64, m: Option<u64>, budget: usize) -> Result<Report> {
    let mut r = Report::new("irreducible");
    r.param("n", n).param("m", m).param("prime_budget", budget);
    let cert = certify(&family(n, m)?, budget)?;
    r.summary = certificate_json(&cert).as_object().cloned().unwrap_or_default();
    if cert.verdict == Verdict::Reducible {
        r.violation(json!({"n": n, "m": m, "property": "irreducible over Q",
            "rational_root": display_opt(cert.rational_root.as_ref())}));
    }
    Ok(r)
}

pub fn scan(m: Option<u64>, budget: usize, cfg: &RunConfig) -> Result<Report> {
    let (lo, hi) = cfg.scan_range;
    let lo = if m.is_some() { lo.max(3) } else { lo };
    let mut r = Report::new("scan");
    r.param("n_lo", lo).param("n_hi", hi).param("m", m).param("prime_budget", budget);
    let rows = conjecture_scan(lo, hi, m, budget)?;
    for (k, v) in tally(&rows) {
        r.summary(k, v);
    }
    for row in &rows {
        if row.verdict == Verdict::Reducible {
            r.violation(json!({"n": row.n, "m": row.m, "property": "irreducible over Q"}));
        }
        r.rows.push(json!({
            "n": row.n, "m": row.m, "kind": ser(row.kind), "verdict": ser(row.verdict),
            "theoretical": ser(&row.theoretical), "sieve_primes": row.sieve_primes,
        }));
    }
    Ok(r)
}

pub fn disc(n: u64, m: Option<u64>) -> Result<Report> {
    let mut r = Report::new("disc");
    r.param("n", n).param("m", m);
    let rep = discriminant(&family(n, m)?)?;
    r.summary("disc", exact(&rep.disc))
        .summary("squarefree_part", exact(&rep.squarefree_part))
        .summary("quad_field", display_opt(rep.quad_field.as_ref()))
        .summary("is_square", rep.is_square)
        .summary("factorization", factorization_json(&rep.factorization))
        .summary("factorization_complete", rep.factorization_complete);
    let closed = match (m, n) {
        (None, _) => Some(closed_form_disc_f1n(n)?),
        (Some(m), 3) => Some(closed_form_disc_mf13(m)),
        (Some(m), 4) => Some(closed_form_disc_mf14(m)),
        _ => None,
    };
    if let Some(c) = &closed {
        r.summary("closed_form", exact(c)).summary("closed_form_agrees", *c == rep.disc);
        if *c != rep.disc {
            r.violation(json!({"n": n, "m": m, "property": "discriminant equals closed form",
                "computed": exact(&rep.disc), "closed_form": exact(c)}));
        }
    }
    Ok(r)
}

pub fn subfield(n: u64) -> Result<Report> {
    let mut r = Report::new("subfield");
    r.param("n", n);
    match quadratic_subfield(n) {
        Ok(q) => {
            r.summary("radicand", display_opt(q.radicand.as_ref()))
                .summary("stated_radicand", exact(&q.stated_radicand))
                .summary("reduced_differs", q.differs)
                .summary("degenerate", q.is_degenerate());
        }
        Err(Error::Invariant(msg)) => {
            r.violation(json!({"n": n, "property": "case radicand matches discriminant", "detail": msg}));
        }
        Err(e) => return Err(e),
    }
    Ok(r)
}

fn galois_config(budget: usize) -> GaloisConfig {
    GaloisConfig { prime_budget: budget, ..GaloisConfig::default() }
}

pub fn galois(n: u64, budget: usize, cfg: &RunConfig) -> Result<Report> {
    let (lo, hi) = cfg.prime_window;
    let mut r = Report::new("galois");
    r.param("n", n).param("prime_lo", lo).param("prime_hi", hi);
    let v = classify_galois_with(n, lo, hi, &galois_config(budget))?;
    let group = v.group.map(|g| g.to_string());
    r.summary("degree", v.degree)
        .summary("kind", ser(v.kind))
        .summary("group", group.clone())
        .summary("group_order", display_opt(v.group.map(|g| g.order())))
        .summary("irreducible", v.irreducible)
        .summary("disc_is_square", v.disc_is_square)
        .summary("transposition_prime", v.transposition_prime)
        .summary("transposition_literal", v.transposition_literal)
        .summary("long_cycle", ser(v.long_cycle))
        .summary("proof_route", ser(v.proof_route))
        .summary("usable_primes", v.usable_primes)
        .summary("tied", v.tied.iter().map(|g| g.to_string()).collect::<Vec<_>>())
        .summary("diagnostic", v.diagnostic.clone());
    for fit in &v.fits {
        r.rows.push(json!({
            "group": fit.group.to_string(), "total_variation": fit.total_variation,
            "chi_square": fit.chi_square, "parity_consistent": fit.parity_consistent,
        }));
    }
    if let Some(expected) = table1_expected(n) {
        r.summary("expected", expected.to_string());
        if v.group != Some(expected) {
            r.violation(json!({"n": n, "property": "Galois group matches table",
                "expected": expected.to_string(), "computed": group}));
        }
    }
    Ok(r)
}

pub fn verify_table1(budget: usize, cfg: &RunConfig) -> Result<Report> {
    let (lo, hi) = cfg.prime_window;
    let mut r = Report::new("verify-table1");
    r.param("prime_lo", lo).param("prime_hi", hi);
    let rows = verify_table1_with(lo, hi, &galois_config(budget))?;
    let agree = rows.iter().filter(|x| x.agree).count();
    r.summary("rows", rows.len()).summary("agree", agree);
    for row in &rows {
        let v = json!({
            "n": row.n, "expected": row.expected.to_string(),
            "computed": row.computed.map(|g| g.to_string()), "kind": ser(row.kind),
            "agree": row.agree, "non_abelian": row.non_abelian,
        });
        if !row.agree {
            r.violation(v.clone());
        }
        r.rows.push(v);
    }
    Ok(r)
}

pub fn theta(n_max: usize) -> Result<Report> {
    let mut r = Report::new("theta");
    r.param("nmax", n_max);
    let t = theta_coefficients(n_max)?;
    r.summary("integral", t.integral);
    for (i, c) in t.coeffs.iter().enumerate() {
        r.rows.push(json!({"n": i + 1, "a": exact(c)}));
    }
    if !t.integral {
        r.violation(json!({"property": "theta coefficients are rational integers"}));
    }
    Ok(r)
}

pub fn thm51(p_max: u64) -> Result<Report> {
    let mut r = Report::new("thm51");
    r.param("pmax", p_max);
    let rep = theorem51_equivalence(p_max)?;
    let xy = fact_xy_mod3(p_max);
    let cube = fact_cube_mod5(200);
    r.summary("checked", rep.checked)
        .summary("split_primes", rep.split_primes.len())
        .summary("violations", rep.violations.len())
        .summary("xy_mod3_checked", xy.checked)
        .summary("cube_mod5_checked", cube.checked);
    for p in &rep.split_primes {
        r.rows.push(json!({"p": p, "split": true}));
    }
    for v in &rep.violations {
        r.violation(json!({"p": v.p, "property": "split <=> 15 | xy <=> a(p) = 2",
            "splits": v.splits, "rep_fifteen": v.rep_fifteen, "a_p": exact(&v.a_p)}));
    }
    for v in &xy.violations {
        r.violation(json!({"property": "3 | xy", "instance": v}));
    }
    for v in &cube.violations {
        r.violation(json!({"property": "5 | XY", "instance": v}));
    }
    Ok(r)
}

pub fn eta(n_max: usize) -> Result<Report> {
    let mut r = Report::new("eta");
    r.param("nmax", n_max);
    let rep = eta_product_mismatch(n_max)?;
    r.summary("pairs", rep.rows.len())
        .summary("restriction", rep.restriction.clone())
        .summary("split_primes", rep.split_primes.clone())
        .summary("solutions_12p", rep.solutions_12p)
        .summary("solutions_24p", rep.solutions_24p);
    for row in &rep.rows {
        r.rows.push(json!({
            "a": row.a, "b": row.b, "first_mismatch": row.first_mismatch,
            "eta_coeff": display_opt(row.eta_coeff), "theta_coeff": display_opt(row.theta_coeff),
        }));
        if row.first_mismatch.is_none() {
            r.violation(json!({"a": row.a, "b": row.b, "property": "theta differs from the eta product"}));
        }
    }
    if rep.solutions_12p != 0 {
        r.violation(json!({"property": "no solutions with exponent 12p", "count": rep.solutions_12p}));
    }
    Ok(r)
}

pub fn identity_check(n_max: u64) -> Result<Report> {
    if n_max < 4 {
        return Err(Error::Domain(format!("n_max = {n_max}, need n_max >= 4")));
    }
    let mut r = Report::new("identity-check");
    r.param("n_lo", 4).param("n_hi", n_max);
    let mut checked = 0u64;
    for n in 4..=n_max {
        for k in 2..n {
            checked += 1;
            if !binom_identity_check(n, k) {
                r.violation(json!({"n": n, "k": k, "property": "C(n+1,k-1) = sum j C(n-j,k-j)"}));
            }
        }
    }
    r.summary("checked", checked);
    Ok(r)
}
