use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::OutputFormat;

/// Result of one subcommand: parameters, a summary, per-item rows and any
/// violated properties.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub summary: Map<String, Value>,
    pub rows: Vec<Value>,
    pub violations: Vec<Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), ..Self::default() }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.summary.insert(key.to_string(), value.into());
        self
    }

    pub fn violation(&mut self, value: Value) {
        self.violations.push(value);
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "summary": self.summary,
            "rows": self.rows,
            "violations": self.violations,
            "ok": self.ok(),
        })
    }

    /// One record per line: a record type followed by `key=value` fields.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let mut header = self.params.clone();
        header.insert("command".into(), Value::String(self.command.clone()));
        header.insert("ok".into(), Value::Bool(self.ok()));
        push_record(&mut out, "params", &header);
        push_record(&mut out, "summary", &self.summary);
        for row in &self.rows {
            push_value(&mut out, "row", row);
        }
        for v in &self.violations {
            push_value(&mut out, "violation", v);
        }
        out
    }

    pub fn emit(&self, format: OutputFormat, out: &mut impl Write) -> io::Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
            OutputFormat::Tsv => out.write_all(self.to_tsv().as_bytes()),
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace(['\t', '\n'], " "),
        other => other.to_string(),
    }
}

fn push_record(out: &mut String, kind: &str, fields: &Map<String, Value>) {
    out.push_str(kind);
    for (k, v) in fields {
        out.push('\t');
        out.push_str(k);
        out.push('=');
        out.push_str(&scalar(v));
    }
    out.push('\n');
}

fn push_value(out: &mut String, kind: &str, v: &Value) {
    match v {
        Value::Object(m) => push_record(out, kind, m),
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other.clone());
            push_record(out, kind, &m);
        }
    }
}
