//! Tabular output in CSV, TSV or JSON.
//!
//! CSV and TSV carry a header row and LF line endings. JSON is an array of
//! flat records keyed by the same header names, and every numeric cell
//! holds the value its CSV text parses to.

use std::fmt;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Tsv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Tsv => "tsv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "tsv" => Ok(OutputFormat::Tsv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Written with the shortest representation that round-trips.
    Float(f64),
    /// Pre-formatted number, e.g. a probability printed as `1.70E-03`.
    Formatted(String),
    Text(String),
}

impl Cell {
    pub fn float(v: f64) -> Self {
        Cell::Float(v)
    }

    pub fn fixed(v: f64, decimals: usize) -> Self {
        Cell::Formatted(format!("{v:.decimals$}"))
    }

    pub fn probability(p: f64, style: ProbabilityStyle) -> Self {
        Cell::Formatted(style.format(p))
    }

    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => v.to_string(),
            Cell::Formatted(s) | Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        let number = |v: f64| {
            Number::from_f64(v)
                .map(Value::Number)
                .unwrap_or(Value::Null)
        };
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => number(*v),
            Cell::Formatted(s) => s
                .parse::<f64>()
                .map(number)
                .unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Layout of probability cells: fixed decimals down to `scientific_below`,
/// three significant digits in scientific notation underneath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityStyle {
    pub decimals: usize,
    pub scientific_below: f64,
}

impl Default for ProbabilityStyle {
    /// Four decimals, scientific below 0.002 (so 0.0026 stays decimal and
    /// 0.00184 prints as `1.84E-03`).
    fn default() -> Self {
        Self {
            decimals: 4,
            scientific_below: 2e-3,
        }
    }
}

impl ProbabilityStyle {
    pub fn format(&self, p: f64) -> String {
        if p >= self.scientific_below || p == 0.0 {
            format!("{p:.*}", self.decimals)
        } else {
            scientific(p, 2)
        }
    }
}

/// `1.70E-03` style: fixed mantissa decimals, signed exponent of at least
/// two digits.
pub fn scientific(v: f64, decimals: usize) -> String {
    let raw = format!("{v:.decimals$e}");
    let (mantissa, exp) = raw.split_once('e').expect("exponent formatting");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.delimited(b','),
            OutputFormat::Tsv => self.delimited(b'\t'),
            OutputFormat::Json => self.json(),
        }
    }

    fn delimited(&self, delimiter: u8) -> String {
        let mut writer = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.headers).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::text))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn json(&self) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .headers
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Cell::json))
                    .collect();
                Value::Object(map)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&records).expect("json values serialize");
        out.push('\n');
        out
    }
}
