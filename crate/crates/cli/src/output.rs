//! Rendering of command results as JSON, CSV, or plain text.

use std::io::{self, Write};

use clap::ValueEnum;
use pattern_lab::rational::{to_display_string, to_fraction_string, Rational};
use pattern_lab::report::Report;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Int(i64),
    Rational(Rational),
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(v) => json!(v),
            Cell::Rational(r) => Value::String(to_fraction_string(r)),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Rational(r) => to_fraction_string(r),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Rational(r) => to_display_string(r),
        }
    }
}

impl From<&Rational> for Cell {
    fn from(r: &Rational) -> Self {
        Cell::Rational(r.clone())
    }
}

pub enum Body {
    Rows { columns: Vec<&'static str>, rows: Vec<Vec<Cell>> },
    Checks(Report),
}

/// A finished command result. `extra` holds additional top-level JSON
/// fields; `notes` are `key: value` lines printed after a text table.
pub struct Output {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub body: Body,
    pub extra: Map<String, Value>,
    pub notes: Vec<(String, String)>,
}

impl Output {
    pub fn rows(command: &'static str, config: Map<String, Value>, columns: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Self {
        Output {
            command,
            config,
            body: Body::Rows { columns, rows },
            extra: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn checks(command: &'static str, config: Map<String, Value>, report: Report) -> Self {
        Output {
            command,
            config,
            body: Body::Checks(report),
            extra: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        match &self.body {
            Body::Rows { .. } => true,
            Body::Checks(r) => r.all_passed(),
        }
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
            Format::Text => self.write_text(out),
        }
    }

    fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        let mut top = Map::new();
        top.insert("command".into(), json!(self.command));
        top.insert("config".into(), Value::Object(self.config.clone()));
        match &self.body {
            Body::Rows { columns, rows } => {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                        Value::Object(obj)
                    })
                    .collect();
                top.insert("rows".into(), Value::Array(rows));
            }
            Body::Checks(report) => {
                let checks: Vec<Value> = report
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "status": c.status.as_str(), "detail": c.detail}))
                    .collect();
                top.insert("checks".into(), Value::Array(checks));
            }
        }
        for (k, v) in &self.extra {
            top.insert(k.clone(), v.clone());
        }
        top.insert("all_passed".into(), json!(self.all_passed()));
        serde_json::to_writer_pretty(&mut *out, &Value::Object(top))?;
        writeln!(out)
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        match &self.body {
            Body::Rows { columns, rows } => {
                w.write_record(columns)?;
                for row in rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
            }
            Body::Checks(report) => {
                w.write_record(["name", "status", "detail"])?;
                for c in &report.checks {
                    w.write_record([c.name.as_str(), c.status.as_str(), c.detail.as_str()])?;
                }
            }
        }
        w.flush()
    }

    fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        match &self.body {
            Body::Rows { columns, rows } => {
                let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
                let widths: Vec<usize> = columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap())
                    .collect();
                let line = |out: &mut dyn Write, fields: Vec<&str>| -> io::Result<()> {
                    let padded: Vec<String> = fields
                        .iter()
                        .zip(&widths)
                        .map(|(f, w)| format!("{f:<w$}"))
                        .collect();
                    writeln!(out, "{}", padded.join("  ").trim_end())
                };
                line(out, columns.clone())?;
                for row in &cells {
                    line(out, row.iter().map(String::as_str).collect())?;
                }
            }
            Body::Checks(report) => {
                for c in &report.checks {
                    if c.detail.is_empty() {
                        writeln!(out, "{}  {}", c.status, c.name)?;
                    } else {
                        writeln!(out, "{}  {}  [{}]", c.status, c.name, c.detail)?;
                    }
                }
                let failed = report.failures().count();
                writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
            }
        }
        for (k, v) in &self.notes {
            writeln!(out, "{k}: {v}")?;
        }
        Ok(())
    }
}
