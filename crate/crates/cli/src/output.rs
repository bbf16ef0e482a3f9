//! Deterministic CSV and JSON table output.
//!
//! CSV files start with `#`-prefixed metadata lines followed by a header
//! row; JSON mirrors the same fields (`command`, `meta`, `columns`,
//! `rows`). Floats are printed with 17 significant digits, so identical
//! configurations produce byte-identical files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Text(s) => csv_escape(s),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // serde_json maps non-finite floats to null
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

/// Fixed 17-significant-digit float formatting.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{v:.16e}")
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Metadata value: formatted like a cell but kept order-preserving.
pub type Meta = Vec<(String, Cell)>;

/// A machine-readable result table.
#[derive(Debug, Clone)]
pub struct Table {
    pub command: &'static str,
    pub meta: Meta,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# fraclatt {}\n", self.command));
        for (k, v) in &self.meta {
            out.push_str(&format!("# {} = {}\n", k, v.csv()));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let meta: serde_json::Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), v.json()))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "command": self.command,
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serialization");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Resolves the output destination. Relative paths are joined onto
/// `$FRACLATT_OUTPUT_DIR` when that variable is set.
pub fn resolve_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(dir) = std::env::var("FRACLATT_OUTPUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Writes `content` to `path` (resolved) or stdout when `path` is `None`.
pub fn emit(content: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(resolve_path(p), content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}
