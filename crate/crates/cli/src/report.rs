//! Report model shared by the JSON, CSV and text writers.
//!
//! Reals are written with 17 significant digits (`{:.16e}`) in both JSON and
//! CSV, so the two formats parse back to the same `f64` bits. Complex values
//! are `{"re": .., "im": ..}` in JSON and `<key>_re`, `<key>_im` columns in
//! CSV. Non-finite numbers become `null` in JSON and empty cells in CSV.

use std::io::{self, Write};

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::value::RawValue;
use torsionlab::Complex64;

#[derive(Debug, Clone)]
pub enum Field {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Text(String),
    Bool(bool),
    Null,
    Object(Record),
    List(Vec<Field>),
}

impl From<i64> for Field {
    fn from(v: i64) -> Self {
        Field::Int(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<Complex64> for Field {
    fn from(v: Complex64) -> Self {
        Field::Complex(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

// Missing numbers keep their shape so CSV columns line up across rows.
impl From<Option<Complex64>> for Field {
    fn from(v: Option<Complex64>) -> Self {
        Field::Complex(v.unwrap_or(Complex64::new(f64::NAN, f64::NAN)))
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        Field::Real(v.unwrap_or(f64::NAN))
    }
}

impl From<Option<String>> for Field {
    fn from(v: Option<String>) -> Self {
        v.map_or(Field::Null, Field::Text)
    }
}

/// Ordered key/value pairs.
#[derive(Debug, Clone, Default)]
pub struct Record(Vec<(String, Field)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.0.push((key.to_string(), value.into()));
    }
}

pub fn format_real(v: f64) -> Option<String> {
    v.is_finite().then(|| format!("{v:.16e}"))
}

fn raw_number<S: Serializer>(v: f64, ser: S) -> Result<S::Ok, S::Error> {
    match format_real(v) {
        Some(text) => RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(ser),
        None => ser.serialize_none(),
    }
}

struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        raw_number(self.0, ser)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Int(v) => ser.serialize_i64(*v),
            Field::Real(v) => raw_number(*v, ser),
            Field::Complex(z) => {
                let mut m = ser.serialize_map(Some(2))?;
                m.serialize_entry("re", &Num(z.re))?;
                m.serialize_entry("im", &Num(z.im))?;
                m.end()
            }
            Field::Text(t) => ser.serialize_str(t),
            Field::Bool(b) => ser.serialize_bool(*b),
            Field::Null => ser.serialize_none(),
            Field::Object(r) => r.serialize(ser),
            Field::List(items) => items.serialize(ser),
        }
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Report {
    pub command: &'static str,
    pub config: Record,
    pub results: Vec<Record>,
    pub warnings: Vec<String>,
    pub versions: Record,
}

impl Report {
    pub fn new(command: &'static str, config: Record) -> Self {
        let versions = Record::new()
            .with("torsionlab", torsionlab::VERSION)
            .with("torsionlab-cli", env!("CARGO_PKG_VERSION"))
            .with("parallel", torsionlab::par::parallel_available());
        Report { command, config, results: Vec::new(), warnings: Vec::new(), versions }
    }

    pub fn write(&self, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            OutputFormat::Csv => {
                self.write_csv(out)?;
                self.warnings_to_stderr();
                Ok(())
            }
            OutputFormat::Text => {
                self.write_text(out)?;
                self.warnings_to_stderr();
                Ok(())
            }
        }
    }

    fn warnings_to_stderr(&self) {
        for w in &self.warnings {
            eprintln!("warning: {w}");
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let Some(first) = self.results.first() else {
            return Ok(());
        };
        let mut header = Vec::new();
        for (k, v) in &first.0 {
            match v {
                Field::Complex(_) => {
                    header.push(format!("{k}_re"));
                    header.push(format!("{k}_im"));
                }
                _ => header.push(k.clone()),
            }
        }
        w.write_record(&header)?;
        for rec in &self.results {
            let mut row = Vec::new();
            for (_, v) in &rec.0 {
                match v {
                    Field::Complex(z) => {
                        row.push(format_real(z.re).unwrap_or_default());
                        row.push(format_real(z.im).unwrap_or_default());
                    }
                    other => row.push(cell(other)),
                }
            }
            w.write_record(&row)?;
        }
        w.flush()
    }

    fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# {}", self.command)?;
        for rec in &self.results {
            let parts: Vec<String> = rec.0.iter().map(|(k, v)| format!("{k}={}", text(v))).collect();
            writeln!(out, "{}", parts.join("  "))?;
        }
        Ok(())
    }
}

fn cell(v: &Field) -> String {
    match v {
        Field::Int(i) => i.to_string(),
        Field::Real(r) => format_real(*r).unwrap_or_default(),
        Field::Complex(z) => {
            format!("{},{}", format_real(z.re).unwrap_or_default(), format_real(z.im).unwrap_or_default())
        }
        Field::Text(t) => t.clone(),
        Field::Bool(b) => b.to_string(),
        Field::Null => String::new(),
        Field::Object(_) | Field::List(_) => serde_json::to_string(v).unwrap_or_default(),
    }
}

fn short(r: f64) -> String {
    let a = r.abs();
    if a != 0.0 && !(1e-4..1e6).contains(&a) {
        format!("{r:.6e}")
    } else {
        format!("{r:.12}")
    }
}

fn text(v: &Field) -> String {
    match v {
        Field::Real(r) => short(*r),
        Field::Complex(z) if z.im == 0.0 => short(z.re),
        Field::Complex(z) => {
            format!("{}{}{}i", short(z.re), if z.im < 0.0 { "-" } else { "+" }, short(z.im.abs()))
        }
        Field::Null => "-".to_string(),
        other => cell(other),
    }
}
