use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

/// One asserted property and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// The output of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub mu: Option<Vec<usize>>,
    pub l: Option<usize>,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The JSON document; object keys come out sorted.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "mu": self.mu,
            "l": self.l,
            "results": self.results,
            "checks": self.checks,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let mu = self.mu.as_ref().map_or("-".to_string(), |m| {
            m.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        });
        let l = self.l.map_or("-".to_string(), |l| l.to_string());
        let _ = writeln!(out, "command: {}   mu: {mu}   l: {l}", self.command);
        let _ = writeln!(out);
        flatten(&mut out, "", &self.results);
        let _ = writeln!(out);
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let pad = width - c.name.chars().count();
            let _ = writeln!(out, "{status}  {}{}  {}", c.name, " ".repeat(pad), c.detail);
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "\n{passed}/{} checks passed", self.checks.len());
        out
    }
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(out, &key, x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(out, &format!("{prefix}[{i}]"), x);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix}: {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix}: {other}");
        }
    }
}
