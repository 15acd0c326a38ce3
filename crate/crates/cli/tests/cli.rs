use std::process::{Command, Output};

use serde_json::Value;

fn nacf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nacf"))
        .args(args)
        .env_remove("NACF_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn disc_4_record() {
    let out = nacf(&["disc", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["n"], 4);
    assert_eq!(v["summary"]["disc"], "-200");
    assert_eq!(v["summary"]["squarefree_part"], "-2");
    assert_eq!(v["summary"]["quad_field"], "-2");
    assert_eq!(v["summary"]["factorization"]["factors"], serde_json::json!([["2", 3], ["5", 2]]));
}

#[test]
fn large_discriminant_is_a_string() {
    let v = json(&nacf(&["disc", "40"]));
    let d = v["summary"]["disc"].as_str().expect("string");
    assert!(d.len() > 60, "{d}");
    assert_eq!(v["summary"]["closed_form_agrees"], true);
}

#[test]
fn m_family_closed_form() {
    let v = json(&nacf(&["disc", "3", "--m", "5"]));
    assert_eq!(v["summary"]["disc"], "-35");
    assert_eq!(v["ok"], true);
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(nacf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nacf(&["disc"]).status.code(), Some(2));
    assert_eq!(nacf(&["--format", "xml", "disc", "4"]).status.code(), Some(2));
}

#[test]
fn out_of_domain_input_is_usage_error() {
    let out = nacf(&["roots", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 2"));
}

#[test]
fn starved_prime_window_is_reported_as_violation() {
    // too few primes to identify the group of f_{1,7}
    let out = nacf(&["--prime-window", "2,50", "galois", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["violations"][0]["expected"], "PGL(2,5)");
}

#[test]
fn thm51_to_1000() {
    let out = nacf(&["thm51", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    // primes up to 1000 other than 2 and 5
    assert_eq!(v["summary"]["checked"], 166);
    assert_eq!(v["summary"]["violations"], 0);
}

#[test]
fn tsv_records() {
    let out = nacf(&["--format", "tsv", "eta", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("params\t"));
    assert!(lines[1].starts_with("summary\t"));
    assert_eq!(lines.iter().filter(|l| l.starts_with("row\t")).count(), 12);
    assert!(lines[2].contains("a=1\tb=23\teta_coeff=-1\tfirst_mismatch=2\ttheta_coeff=0"));
}

#[test]
fn config_file_and_env_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("nacf-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(&path, "# small scan\nscan_range = 2, 12\nformat = tsv\n").unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_nacf"))
        .args(["scan"])
        .env("NACF_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("row\t")).count(), 11);

    let out = nacf(&["--config", path.to_str().unwrap(), "--format", "json", "--scan-range", "2,5", "scan"]);
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["summary"]["irreducible"], 4);

    std::fs::write(&path, "tol = -1\n").unwrap();
    let out = nacf(&["--config", path.to_str().unwrap(), "disc", "4"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn irreducible_certificates() {
    let v = json(&nacf(&["irreducible", "7"]));
    assert_eq!(v["summary"]["verdict"], "Irreducible");
    let v = json(&nacf(&["irreducible", "10"]));
    assert_eq!(v["summary"]["kind"], "DegreeSetSieve");
    assert_eq!(v["summary"]["sieve_surviving"], serde_json::json!([]));
}

#[test]
fn roots_and_fpn_bounds() {
    let v = json(&nacf(&["roots", "30"]));
    assert_eq!(v["summary"]["bound_ok"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 29);
    let v = json(&nacf(&["bounds-fpn", "3", "100"]));
    assert_eq!(v["summary"]["bound_ok"], true);
}

#[test]
fn subfield_and_identity() {
    let v = json(&nacf(&["subfield", "9"]));
    assert_eq!(v["summary"]["stated_radicand"], "5");
    let out = nacf(&["identity-check", "--n-max", "40"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["checked"], (4..=40u64).map(|n| n - 2).sum::<u64>());
}

#[test]
fn theta_is_integral() {
    let v = json(&nacf(&["theta", "60"]));
    assert_eq!(v["summary"]["integral"], true);
    assert_eq!(v["rows"][0]["a"], "1");
    assert_eq!(v["rows"][1]["a"], "0");
}
