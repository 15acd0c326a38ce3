//! Run configuration: built-in defaults, then an optional `key = value` file,
//! then command-line flags.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Tsv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "tsv" => Ok(Self::Tsv),
            other => Err(format!("unknown output format {other:?} (expected json or tsv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Tsv => "tsv",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub prime_window: (u64, u64),
    pub scan_range: (u64, u64),
    pub tol: f64,
    pub theta_nmax: usize,
    pub output_format: OutputFormat,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            prime_window: (2, 100_000),
            scan_range: (2, 300),
            tol: 1e-9,
            theta_nmax: 10_000,
            output_format: OutputFormat::Json,
            threads: 0,
        }
    }
}

pub fn parse_pair(s: &str) -> Result<(u64, u64), String> {
    let parts: Vec<&str> = s.split([',', ' ', ':']).filter(|p| !p.is_empty()).collect();
    match parts.as_slice() {
        [a, b] => {
            let a = a.parse().map_err(|_| format!("bad integer {a:?} in {s:?}"))?;
            let b = b.parse().map_err(|_| format!("bad integer {b:?} in {s:?}"))?;
            Ok((a, b))
        }
        _ => Err(format!("expected two integers LO,HI, got {s:?}")),
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value.parse().map_err(|_| format!("bad value {value:?} for {key}"))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "prime_window" => self.prime_window = parse_pair(value)?,
            "scan_range" => self.scan_range = parse_pair(value)?,
            "tol" => self.tol = parse_value("tol", value)?,
            "theta_nmax" => self.theta_nmax = parse_value("theta_nmax", value)?,
            "output_format" | "format" => self.output_format = value.parse()?,
            "threads" => self.threads = parse_value("threads", value)?,
            other => return Err(format!("unknown configuration key {other:?}")),
        }
        Ok(())
    }

    /// Applies the lines of a configuration file. Blank lines and `#` comments
    /// are ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", i + 1))?;
            self.set(key, value).map_err(|e| format!("line {}: {e}", i + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.apply_text(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        let (lo, hi) = self.prime_window;
        if lo >= hi {
            return Err(format!("prime window [{lo}, {hi}] needs lo < hi"));
        }
        let (a, b) = self.scan_range;
        if a > b {
            return Err(format!("scan range [{a}, {b}] is empty"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("tol must be positive, got {}", self.tol));
        }
        Ok(())
    }
}
