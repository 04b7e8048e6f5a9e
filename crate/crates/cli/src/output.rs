use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Decimal places for printed numbers; `None` prints the shortest string
/// that round-trips.
#[derive(Debug, Clone, Copy)]
pub struct Fmt {
    pub digits: Option<usize>,
}

impl Fmt {
    /// `x` rounded to the requested decimals, for JSON.
    pub fn num(&self, x: f64) -> Value {
        let v = match self.digits {
            Some(d) => format!("{x:.d$}").parse::<f64>().unwrap_or(x),
            None => x,
        };
        // -0.0000 would otherwise print as -0.0
        let v = if v == 0.0 { 0.0 } else { v };
        json!(v)
    }

    /// `x` as text for CSV and TSV.
    pub fn text(&self, x: f64) -> String {
        let s = match self.digits {
            Some(d) => format!("{x:.d$}"),
            None => format!("{x}"),
        };
        match s.strip_prefix('-') {
            Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
            _ => s,
        }
    }
}

pub fn record(command: &str, inputs: Value, results: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
    })
}

pub fn to_text(record: &Value) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("JSON values always serialise");
    s.push('\n');
    s
}

/// Comma-separated table with a header row.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

/// Tab-separated columns after a single `#` header line.
pub fn tsv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut s = format!("# {}\n", header.join("\t"));
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    s
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
