//! Versioned tables: CSV with `#` comment headers, or a JSON object.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{CliError, Result};

pub const SCHEMA: &str = "spectra-lab v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal; exponent form outside `[1e-4, 1e15)`.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => f.write_str(&format_float(*v)),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
        }
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) => json!(v),
            Cell::Bool(v) => json!(v),
            Cell::Text(v) => json!(v),
        }
    }
}

/// Output table with its command tag and `key=value` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut head = format!("# {SCHEMA} {}\n", self.command);
        for (k, v) in &self.meta {
            head.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string())).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells");
        head + &body
    }

    fn render_json(&self) -> String {
        let meta: serde_json::Map<String, Value> =
            self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> =
            self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::to_json).collect())).collect();
        let doc = json!({
            "schema": format!("{SCHEMA} {}", self.command),
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_string_pretty(&doc).expect("json values are serializable") + "\n"
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        write_text(path, &self.render(format))
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_json(path: &Path, doc: &Value) -> Result<()> {
    write_text(path, &(serde_json::to_string_pretty(doc).expect("json values are serializable") + "\n"))
}

/// A table read back from disk; cells stay textual until a column is parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedTable {
    pub command: Option<String>,
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<String>,
    /// `(source line or row number, cells)`.
    pub rows: Vec<(usize, Vec<String>)>,
}

impl LoadedTable {
    pub fn parse(text: &str) -> std::result::Result<Self, (usize, String)> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_csv(text)
        }
    }

    fn parse_csv(text: &str) -> std::result::Result<Self, (usize, String)> {
        let mut command = None;
        let mut meta = BTreeMap::new();
        let mut skipped = 0;
        for line in text.lines() {
            let Some(comment) = line.strip_prefix('#') else { break };
            skipped += 1;
            let comment = comment.trim();
            if let Some(cmd) = comment.strip_prefix(SCHEMA) {
                command = Some(cmd.trim().to_string());
            } else if let Some((k, v)) = comment.split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let body: String = text.lines().skip(skipped).flat_map(|l| [l, "\n"]).collect();
        let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(body.as_bytes());
        let columns = r
            .headers()
            .map_err(|e| (skipped + 1, e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| (e.position().map_or(0, |p| p.line() as usize + skipped), e.to_string()))?;
            let line = rec.position().map_or(0, |p| p.line() as usize) + skipped;
            rows.push((line, rec.iter().map(str::to_string).collect()));
        }
        Ok(Self { command, meta, columns, rows })
    }

    fn parse_json(text: &str) -> std::result::Result<Self, (usize, String)> {
        let doc: Value = serde_json::from_str(text).map_err(|e| (e.line(), e.to_string()))?;
        let command = doc["schema"].as_str().and_then(|s| s.strip_prefix(SCHEMA)).map(|s| s.trim().to_string());
        let meta = doc["meta"]
            .as_object()
            .map(|m| m.iter().map(|(k, v)| (k.clone(), v.as_str().map_or_else(|| v.to_string(), str::to_string))).collect())
            .unwrap_or_default();
        let columns: Vec<String> = doc["columns"]
            .as_array()
            .ok_or((1, "missing \"columns\" array".to_string()))?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or((1, "column names must be strings".to_string())))
            .collect::<std::result::Result<_, _>>()?;
        let rows = doc["rows"]
            .as_array()
            .ok_or((1, "missing \"rows\" array".to_string()))?
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let cells = row.as_array().ok_or((i + 1, "row is not an array".to_string()))?;
                Ok((i + 1, cells.iter().map(|c| c.as_str().map_or_else(|| c.to_string(), str::to_string)).collect()))
            })
            .collect::<std::result::Result<_, (usize, String)>>()?;
        Ok(Self { command, meta, columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Parses one column as `f64`, reporting the offending row on failure.
    pub fn column_f64(&self, name: &str) -> std::result::Result<Vec<f64>, (usize, String)> {
        let idx = self.column_index(name).ok_or((1, format!("missing column '{name}'")))?;
        self.rows
            .iter()
            .map(|(line, cells)| {
                let cell = cells.get(idx).ok_or((*line, format!("row has no '{name}' cell")))?;
                cell.trim().parse::<f64>().map_err(|_| (*line, format!("'{cell}' in column '{name}' is not a number")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> Table {
        let mut t = Table::new("demo", &["i", "x", "ok", "label"]);
        t.meta("seed", 7).meta("note", "a b");
        t.push(vec![1usize.into(), 0.1f64.into(), true.into(), "first".into()]);
        t.push(vec![2usize.into(), 1.25e-17f64.into(), false.into(), "second".into()]);
        t
    }

    #[test]
    fn csv_header_and_rows() {
        let text = sample_table().render(Format::Csv);
        assert!(text.starts_with("# spectra-lab v1 demo\n# seed=7\n# note=a b\ni,x,ok,label\n"));
        assert!(text.contains("2,1.25e-17,false,second"));
    }

    #[test]
    fn both_formats_round_trip() {
        for format in [Format::Csv, Format::Json] {
            let back = LoadedTable::parse(&sample_table().render(format)).unwrap();
            assert_eq!(back.command.as_deref(), Some("demo"));
            assert_eq!(back.meta["seed"], "7");
            assert_eq!(back.column_f64("x").unwrap(), vec![0.1, 1.25e-17]);
            assert_eq!(back.rows[1].1[3], "second");
        }
    }

    #[test]
    fn float_text_is_lossless() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, 14.134725141734694, 0.0] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn bad_cell_reports_line() {
        let text = "# spectra-lab v1 demo\n# seed=1\nx\n1.5\nnope\n";
        let t = LoadedTable::parse(text).unwrap();
        let (line, msg) = t.column_f64("x").unwrap_err();
        assert_eq!(line, 5);
        assert!(msg.contains("nope"));
    }
}
