//! Record output: JSON lines, or CSV with a header taken from the first
//! record's keys. Everything goes through one buffered writer.

use std::io::Write;

use abelia_core::DoubleDouble;
use serde_json::{Map, Value};

use crate::error::AppResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    wrote_header: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Emitter { format, out, wrote_header: false }
    }

    pub fn record(&mut self, record: &Map<String, Value>) -> AppResult<()> {
        match self.format {
            Format::Jsonl => {
                serde_json::to_writer(&mut self.out, record).map_err(std::io::Error::from)?;
                self.out.write_all(b"\n")?;
            }
            Format::Csv => {
                if !self.wrote_header {
                    self.out.write_all(&csv_line(record.keys().map(String::as_str))?)?;
                    self.wrote_header = true;
                }
                let fields: Vec<String> = record.values().map(csv_field).collect();
                self.out.write_all(&csv_line(fields.iter().map(String::as_str))?)?;
            }
        }
        Ok(())
    }

    pub fn value(&mut self, value: Value) -> AppResult<()> {
        match value {
            Value::Object(map) => self.record(&map),
            other => {
                let mut map = Map::new();
                map.insert("value".into(), other);
                self.record(&map)
            }
        }
    }

    pub fn flush(&mut self) -> AppResult<()> {
        self.out.flush()?;
        Ok(())
    }
}

fn csv_line<'a>(fields: impl Iterator<Item = &'a str>) -> AppResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields)?;
    w.into_inner().map_err(|e| std::io::Error::other(e.to_string()).into())
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Real number rendered with `digits` significant digits.
pub fn real(x: f64, digits: usize) -> Value {
    Value::String(DoubleDouble::from_f64(x).to_decimal(digits))
}

pub fn real_dd(x: DoubleDouble, digits: usize) -> Value {
    Value::String(x.to_decimal(digits))
}
