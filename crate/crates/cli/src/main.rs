//! `nacf`: verification pipelines for the `f_{1,n}` family.
//!
//! Exit codes: 0 when every checked property holds, 1 when a property is
//! violated (or a computation fails), 2 on usage errors.

mod commands;
mod config;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{parse_pair, OutputFormat, RunConfig};
use nacf_core::irred::DEFAULT_PRIME_BUDGET;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "nacf", version, about = "Exact checks for the f_{1,n} polynomial family")]
struct Cli {
    /// Configuration file with `key = value` lines.
    #[arg(long, global = true, env = "NACF_CONFIG")]
    config: Option<PathBuf>,

    #[arg(long, global = true)]
    format: Option<OutputFormat>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Prime window for Frobenius sampling, as LO,HI.
    #[arg(long, global = true, value_parser = parse_pair)]
    prime_window: Option<(u64, u64)>,

    /// Range of n for `scan`, as LO,HI.
    #[arg(long, global = true, value_parser = parse_pair)]
    scan_range: Option<(u64, u64)>,

    #[arg(long, global = true)]
    theta_nmax: Option<usize>,

    /// Unramified primes the degree-set sieve may examine.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME_BUDGET)]
    prime_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified complex roots of f_{1,n} and the modulus bounds.
    Roots { n: u64 },
    /// Root modulus bounds for the base-p digit polynomial f_{p,N}.
    BoundsFpn {
        p: u64,
        #[arg(value_name = "N")]
        n_value: u64,
    },
    /// Irreducibility certificate for f_{1,n} or its m-generalization.
    Irreducible {
        n: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Irreducibility certificates over the configured range of n.
    Scan {
        #[arg(long)]
        m: Option<u64>,
    },
    /// Exact discriminant, factorization and quadratic subfield.
    Disc {
        n: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Quadratic subfield of the splitting field from the residue of n mod 4.
    Subfield { n: u64 },
    /// Galois group of f_{1,n} from Frobenius cycle types.
    Galois { n: u64 },
    /// Galois groups for 4 <= n <= 22 against the reference table.
    VerifyTable1,
    /// Coefficients of the Hecke theta series.
    Theta { nmax: Option<usize> },
    /// Split primes of the f_{1,4} splitting field against x^2 + 2y^2 and a(p).
    Thm51 { pmax: u64 },
    /// Eta products q E(q^a) E(q^b), a + b = 24, against the theta series.
    Eta { nmax: usize },
    /// The binomial identity for 4 <= n <= N and all 2 <= k < n.
    IdentityCheck {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    if let Some(f) = cli.format {
        cfg.output_format = f;
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(w) = cli.prime_window {
        cfg.prime_window = w;
    }
    if let Some(s) = cli.scan_range {
        cfg.scan_range = s;
    }
    if let Some(n) = cli.theta_nmax {
        cfg.theta_nmax = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cmd: &Command, cfg: &RunConfig, budget: usize) -> nacf_core::Result<Report> {
    match *cmd {
        Command::Roots { n } => commands::roots(n, cfg),
        Command::BoundsFpn { p, n_value } => commands::bounds_fpn(p, n_value, cfg),
        Command::Irreducible { n, m } => commands::irreducible(n, m, budget),
        Command::Scan { m } => commands::scan(m, budget, cfg),
        Command::Disc { n, m } => commands::disc(n, m),
        Command::Subfield { n } => commands::subfield(n),
        Command::Galois { n } => commands::galois(n, budget, cfg),
        Command::VerifyTable1 => commands::verify_table1(budget, cfg),
        Command::Theta { nmax } => commands::theta(nmax.unwrap_or(cfg.theta_nmax)),
        Command::Thm51 { pmax } => commands::thm51(pmax),
        Command::Eta { nmax } => commands::eta(nmax),
        Command::IdentityCheck { n_max } => commands::identity_check(n_max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = match resolve_config(&cli) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("nacf: configuration error: {msg}");
            return ExitCode::from(2);
        }
    };
    if cfg.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global() {
            eprintln!("nacf: could not size thread pool: {e}");
        }
    }
    let report = match run(&cli.command, &cfg, cli.prime_budget) {
        Ok(r) => r,
        Err(nacf_core::Error::Domain(msg)) => {
            eprintln!("nacf: invalid input: {msg}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("nacf: {e}");
            return ExitCode::from(1);
        }
    };
    let mut out = io::stdout().lock();
    if report.emit(cfg.output_format, &mut out).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        for v in &report.violations {
            eprintln!("nacf: violation: {v}");
        }
        ExitCode::from(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_values() {
        let cli = Cli::try_parse_from(["nacf", "--tol", "1e-6", "--scan-range", "5,9", "scan"]).unwrap();
        let cfg = resolve_config(&cli).unwrap();
        assert_eq!(cfg.tol, 1e-6);
        assert_eq!(cfg.scan_range, (5, 9));
        assert_eq!(cfg.prime_window, (2, 100_000));
    }

    #[test]
    fn inverted_window_is_rejected() {
        let cli = Cli::try_parse_from(["nacf", "--prime-window", "10,3", "galois", "5"]).unwrap();
        assert!(resolve_config(&cli).is_err());
    }

    #[test]
    fn config_text_parses() {
        let mut cfg = RunConfig::default();
        cfg.apply_text("# comment\nprime_window = 2, 5000\nformat = tsv\ntheta_nmax=50\n").unwrap();
        assert_eq!(cfg.prime_window, (2, 5000));
        assert_eq!(cfg.output_format, OutputFormat::Tsv);
        assert_eq!(cfg.theta_nmax, 50);
        assert!(cfg.apply_text("bogus = 1").is_err());
        assert!(cfg.apply_text("no equals sign").is_err());
    }
}
