//! Deterministic CSV / JSON / SVG renderings.

use std::fmt::Write as _;

use cfladder_core::{BigInt, Ladder};
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Big(BigInt),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Big(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.10}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json_value(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // unbounded integers travel as decimal strings
            Cell::Big(v) => json!(v.to_string()),
            Cell::Float(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Big(v.clone())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

/// A metadata block plus rows under a fixed column schema.
#[derive(Clone, Debug)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Table {
            meta: vec![(
                "tool".to_string(),
                format!("cfladder {}", env!("CARGO_PKG_VERSION")),
            )],
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// `# key: value` header lines followed by the CSV body.
    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut out = Vec::new();
        for (k, v) in &self.meta {
            out.extend_from_slice(format!("# {k}: {v}\n").as_bytes());
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }

    pub fn to_json(&self) -> Result<Vec<u8>, CliError> {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), cell.json_value()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": meta, "columns": self.columns, "rows": rows });
        let mut out = serde_json::to_vec_pretty(&doc)?;
        out.push(b'\n');
        Ok(out)
    }
}

const ROW_HEIGHT: i64 = 16;
const TOP: i64 = 56;
const LEFT_X: i64 = 140;
const RIGHT_X: i64 = 400;
const WIDTH: i64 = 540;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Two columns of partial quotients (`b_n` left, `B_k` right) joined by one
/// straight segment per connection. Quotients of at least `2m + 1` are drawn
/// in bold red.
pub fn ladder_svg(ladder: &Ladder, xi_label: &str, eta_label: &str) -> String {
    let n_max = ladder.max_n();
    let k_max = ladder.max_k();
    let rows = n_max.max(k_max) as i64;
    let height = TOP + rows * ROW_HEIGHT + 24;
    let big: BigInt = ladder.m() * 2u32 + 1u32;
    let y = |i: usize| TOP + (i as i64 - 1) * ROW_HEIGHT;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{height}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="13">ladder of ({}, {}), m = {}, {} connections</text>"#,
        WIDTH / 2,
        escape(xi_label),
        escape(eta_label),
        ladder.m(),
        ladder.connections().len()
    );
    let _ = writeln!(
        s,
        r#"<text x="{LEFT_X}" y="{}" text-anchor="middle">b_n</text><text x="{RIGHT_X}" y="{}" text-anchor="middle">B_k</text>"#,
        TOP - 18,
        TOP - 18
    );

    let _ = writeln!(s, r##"<g stroke="#1f77b4" stroke-width="1">"##);
    for c in ladder.connections() {
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT_X}" y1="{}" x2="{RIGHT_X}" y2="{}"/>"#,
            y(c.n),
            y(c.k)
        );
    }
    let _ = writeln!(s, "</g>");

    let column = |s: &mut String, x: i64, label_x: i64, anchor: &str, values: &[BigInt], last: usize| {
        for (i, b) in values.iter().enumerate().take(last + 1).skip(1) {
            let emphasized = *b >= big;
            let (fill, weight) = if emphasized { ("#d62728", "bold") } else { ("black", "normal") };
            let _ = writeln!(
                s,
                r#"<circle cx="{x}" cy="{}" r="2.5" fill="{fill}"/><text x="{label_x}" y="{}" text-anchor="{anchor}" fill="{fill}" font-weight="{weight}">{b}</text>"#,
                y(i),
                y(i) + 4
            );
        }
    };
    let _ = writeln!(s, "<g>");
    column(&mut s, LEFT_X, LEFT_X - 10, "end", ladder.exp_xi().quotients(), n_max);
    column(&mut s, RIGHT_X, RIGHT_X + 10, "start", ladder.exp_eta().quotients(), k_max);
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
