//! Deterministic text output: `%.15g`-style numbers, CSV with `#` config lines.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::Context;

const SIG_DIGITS: i32 = 15;

/// Formats like C's `%.15g`: 15 significant digits, trailing zeros trimmed,
/// exponent form outside `[1e-5, 1e15)`. Negative zero prints as `0`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Rounding to 15 digits first fixes the exponent, e.g. 9.999…e-1 → 1e0.
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..SIG_DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Ordered `key=value` pairs echoed as `#` comment lines.
#[derive(Debug, Default, Clone)]
pub struct Provenance(Vec<(String, String)>);

impl Provenance {
    pub fn new(command: &str) -> Self {
        let mut p = Self::default();
        p.push("command", command);
        p
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }

    pub fn num(&mut self, key: &str, value: f64) {
        self.push(key, fmt_num(value));
    }

    pub fn list(&mut self, key: &str, values: &[f64]) {
        let v: Vec<String> = values.iter().map(|&x| fmt_num(x)).collect();
        self.push(key, v.join(","));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map = self.0.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
        serde_json::Value::Object(map)
    }
}

pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, prov: &Provenance) -> String {
        let mut out = String::new();
        for (k, v) in prov.entries() {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Config, row count and per-column numeric ranges.
    pub fn to_summary(&self, prov: &Provenance) -> String {
        let mut ranges = serde_json::Map::new();
        for (i, col) in self.columns.iter().enumerate() {
            let nums: Vec<f64> = self
                .rows
                .iter()
                .filter_map(|r| match r[i] {
                    Cell::Num(x) => Some(x),
                    Cell::Text(_) => None,
                })
                .collect();
            if nums.is_empty() {
                continue;
            }
            let min = nums.iter().copied().fold(f64::INFINITY, f64::min);
            let max = nums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            ranges.insert(col.to_string(), serde_json::json!({ "min": min, "max": max }));
        }
        let value = serde_json::json!({
            "config": prov.to_json(),
            "columns": self.columns,
            "rows": self.rows.len(),
            "ranges": ranges,
        });
        let mut s = serde_json::to_string_pretty(&value).expect("plain JSON values");
        s.push('\n');
        s
    }
}

/// Writes to `path`, or standard output when `None`.
pub fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).context("writing to stdout")?;
            out.flush().context("flushing stdout")
        }
    }
}
