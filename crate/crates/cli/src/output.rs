//! Report assembly: one JSON document and a list of plain-text tables per
//! command.

use serde_json::{Number, Value};
use spintqft::Scalar;

pub const JSON_DIGITS: usize = 30;
pub const TABLE_DIGITS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let n = self.headers.len();
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (k, c) in r.iter().enumerate().take(n) {
                width[k] = width[k].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| -> String {
            let parts: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        out.push_str(&line(&self.headers));
        out.push('\n');
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
    }
}

pub struct Report {
    pub json: Value,
    pub tables: Vec<Table>,
    /// Exit code 5 is returned when false.
    pub passed: bool,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable report");
                s.push('\n');
                s
            }
            Format::Table => {
                let mut s = String::new();
                for (k, t) in self.tables.iter().enumerate() {
                    if k > 0 {
                        s.push('\n');
                    }
                    t.render(&mut s);
                }
                s
            }
        }
    }
}

fn number(text: &str) -> Value {
    Value::Number(text.parse::<Number>().expect("valid JSON number"))
}

/// `[re, im]` with 30 significant digits.
pub fn complex(z: &Scalar) -> Value {
    let (re, im) = z.to_sci_strings(JSON_DIGITS);
    Value::Array(vec![number(&re), number(&im)])
}

/// A residual or tolerance, 3 significant digits.
pub fn small(x: f64) -> Value {
    number(&small_cell(x))
}

pub fn complex_cell(z: &Scalar) -> String {
    format!("{:.*}", TABLE_DIGITS, z)
}

pub fn small_cell(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.2e}")
}

pub fn pass_cell(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.to_string()
}
