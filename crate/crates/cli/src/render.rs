//! Output assembly: human-readable lines or one deterministic JSON object.
//!
//! JSON objects are backed by ordered maps, so serializing the same data
//! twice yields byte-identical output. Exact values travel as "p/q"
//! strings; only small structural integers (genus, counts, exponents) are
//! JSON numbers.

use std::io::{self, Write};

use mbar::exact::Rat;
use mbar::report::ReportEntry;
use num_bigint::BigInt;
use serde_json::{Map, Value};

/// A command's complete output in both renderings.
pub struct Output {
    lines: Vec<String>,
    json: Value,
}

impl Output {
    pub fn new(lines: Vec<String>, json: Value) -> Output {
        Output { lines, json }
    }

    /// The common shape: entry lines plus detail lines as text, and a JSON
    /// object holding the command name, the extras, and the full report.
    pub fn from_report(
        command: &str,
        entries: Vec<ReportEntry>,
        extras: Map<String, Value>,
        detail: Vec<String>,
    ) -> Output {
        let mut lines: Vec<String> = entries.iter().map(ReportEntry::render).collect();
        lines.extend(detail);
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(command.into()));
        for (key, value) in extras {
            obj.insert(key, value);
        }
        obj.insert(
            "report".into(),
            Value::Array(
                entries
                    .iter()
                    .map(|e| serde_json::to_value(e).expect("report entries serialize"))
                    .collect(),
            ),
        );
        Output { lines, json: Value::Object(obj) }
    }

    /// Writes the chosen rendering to stdout. A closed pipe on the reading
    /// side (`mbar ... | head`) ends output quietly instead of panicking.
    pub fn print(&self, as_json: bool) {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let result = if as_json {
            let text = serde_json::to_string_pretty(&self.json).expect("payloads serialize");
            writeln!(out, "{text}")
        } else {
            self.lines.iter().try_for_each(|line| writeln!(out, "{line}"))
        };
        if let Err(err) = result {
            if err.kind() != io::ErrorKind::BrokenPipe {
                panic!("failed writing to stdout: {err}");
            }
        }
    }

}

// ---- JSON value helpers ----

/// An exact rational as a "p/q" string value.
pub fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

/// A big integer as a decimal string value.
pub fn big_value(b: &BigInt) -> Value {
    Value::String(b.to_string())
}

/// A vector of big integers as an array of decimal strings.
pub fn bigs_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_value).collect())
}

/// A small big integer as a JSON number where it fits, a string otherwise.
pub fn small_value(b: &BigInt) -> Value {
    match i64::try_from(b.clone()) {
        Ok(n) => Value::from(n),
        Err(_) => big_value(b),
    }
}

/// A coordinate tuple rendered "(a, b, c)" for text output.
pub fn tuple_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}
