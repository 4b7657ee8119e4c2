//! Report rendering: aligned tables for people, one JSON object per line
//! for scripts.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

/// Rows sharing one set of columns. Every record carries `kind`.
#[derive(Debug)]
pub struct Section {
    pub kind: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Section {
    pub fn new(kind: &'static str, columns: &[&'static str]) -> Self {
        Self { kind, columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Floats as JSON numbers; non-finite values as strings so every record
/// stays valid JSON.
pub fn num(x: f64) -> Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => Value::Number(n),
        None if x.is_nan() => Value::String("nan".into()),
        None if x > 0.0 => Value::String("inf".into()),
        None => Value::String("-inf".into()),
    }
}

pub fn text(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(sections: &[Section], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Records => {
            for s in sections {
                for row in &s.rows {
                    let mut obj = Map::new();
                    obj.insert("kind".into(), Value::String(s.kind.into()));
                    for (c, v) in s.columns.iter().zip(row) {
                        obj.insert((*c).into(), v.clone());
                    }
                    out.push_str(&Value::Object(obj).to_string());
                    out.push('\n');
                }
            }
        }
        Format::Human => {
            for (i, s) in sections.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                let cells: Vec<Vec<String>> = s.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                let widths: Vec<usize> = s
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(j, c)| cells.iter().map(|r| r[j].chars().count()).chain([c.len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: Vec<&str>| {
                    let mut l = String::new();
                    for (j, item) in items.iter().enumerate() {
                        if j > 0 {
                            l.push_str("  ");
                        }
                        let _ = write!(l, "{item:<w$}", w = widths[j]);
                    }
                    l.trim_end().to_string()
                };
                let _ = writeln!(out, "# {}", s.kind);
                let _ = writeln!(out, "{}", line(s.columns.clone()));
                for r in &cells {
                    let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
                }
            }
        }
    }
    out
}
