//! Output documents and their JSON, CSV and text renderings.
//!
//! Every command produces a [`Document`]:
//!
//! ```json
//! { "command": "negate", "input": [[...]], "results": [...], "all_hold": true }
//! ```
//!
//! JSON numbers use the shortest representation that round-trips exactly,
//! so an emitted `input` fed back through `--file` reproduces the same
//! results bit for bit. Non-finite values are written as the strings
//! `"inf"`, `"-inf"` and `"nan"`. CSV and text output print numbers with
//! 15 significant digits; CSV has one row per certificate and one row per
//! other scalar or vector field.

use std::fmt::Write as _;

use neglab_core::dissimilarity::DissimResult;
use neglab_core::{Certificate, ProbDist};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub command: String,
    pub input: Vec<Vec<f64>>,
    pub results: Vec<Value>,
    pub all_hold: bool,
}

impl Document {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input.iter().map(|d| vector(d)).collect::<Vec<_>>(),
            "results": self.results,
            "all_hold": self.all_hold,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .expect("serializing a JSON value cannot fail");
                s.push('\n');
                s
            }
            Format::Csv => render_csv(&self.to_json()),
            Format::Text => render_text(&self.to_json()),
        }
    }
}

/// A JSON number, or a string for non-finite values.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

pub fn vector(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn dist(p: &ProbDist) -> Value {
    vector(p.probs())
}

/// Certificate as JSON. `index` counts outcomes (or steps) from 1.
pub fn certificate(c: &Certificate) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(c.name));
    if let Some(i) = c.index {
        m.insert("index".into(), json!(i + 1));
    }
    m.insert("lhs".into(), num(c.lhs));
    m.insert("rhs".into(), num(c.rhs));
    m.insert("slack".into(), num(c.slack));
    m.insert("holds".into(), json!(c.holds));
    m.insert("equality".into(), json!(c.equality));
    m.insert("infinite".into(), json!(c.infinite));
    if !c.detail.is_empty() {
        m.insert(
            "detail".into(),
            Value::Array(c.detail.iter().map(certificate).collect()),
        );
    }
    Value::Object(m)
}

pub fn dissim(r: &DissimResult) -> Value {
    json!({
        "alpha": r.alpha,
        "value": num(r.value),
        "sum_of_min_pairs": num(r.sum_of_min_pairs),
        "closed_form_value": num(r.closed_form_value),
        "l1": num(r.l1),
    })
}

/// `%.15g`-style formatting.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(match n.as_f64() {
            Some(x) if !n.is_u64() && !n.is_i64() => fmt_sig(x),
            _ => n.to_string(),
        }),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn numeric_list(v: &Value) -> Option<String> {
    let items = v.as_array()?;
    if items
        .iter()
        .all(|x| matches!(x, Value::Number(_) | Value::String(_)))
    {
        Some(
            items
                .iter()
                .filter_map(scalar)
                .collect::<Vec<_>>()
                .join(";"),
        )
    } else {
        None
    }
}

fn is_certificate(v: &Value) -> bool {
    v.get("holds").is_some() && v.get("lhs").is_some() && v.get("rhs").is_some()
}

const CSV_HEADER: [&str; 10] = [
    "record", "name", "index", "lhs", "rhs", "slack", "holds", "equality", "infinite", "value",
];

fn render_csv(doc: &Value) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut rows: Vec<[String; 10]> = Vec::new();
    flatten_csv(doc, "", &mut rows);
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for row in rows {
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn flatten_csv(v: &Value, path: &str, rows: &mut Vec<[String; 10]>) {
    if is_certificate(v) {
        let field = |k: &str| v.get(k).and_then(scalar).unwrap_or_default();
        rows.push([
            path.to_string(),
            field("name"),
            field("index"),
            field("lhs"),
            field("rhs"),
            field("slack"),
            field("holds"),
            field("equality"),
            field("infinite"),
            String::new(),
        ]);
        if let Some(Value::Array(detail)) = v.get("detail") {
            for (i, d) in detail.iter().enumerate() {
                flatten_csv(d, &format!("{path}.detail[{i}]"), rows);
            }
        }
        return;
    }
    let leaf = |name: &str, value: String| {
        let mut row: [String; 10] = Default::default();
        row[0] = path.to_string();
        row[1] = name.to_string();
        row[9] = value;
        row
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let child_path = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                if let Some(s) = scalar(child) {
                    rows.push(leaf(k, s));
                } else if let Some(s) = numeric_list(child) {
                    rows.push(leaf(k, s));
                } else {
                    flatten_csv(child, &child_path, rows);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                let item_path = format!("{path}[{i}]");
                if let Some(s) = scalar(item).or_else(|| numeric_list(item)) {
                    let mut row = leaf("", s);
                    row[0] = item_path;
                    rows.push(row);
                } else {
                    flatten_csv(item, &item_path, rows);
                }
            }
        }
        other => rows.push(leaf("", scalar(other).unwrap_or_default())),
    }
}

fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    write_text(doc, 0, &mut out);
    out
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) if is_certificate(v) => {
            let get = |k: &str| map.get(k).and_then(scalar).unwrap_or_default();
            let index = map
                .get("index")
                .and_then(scalar)
                .map(|i| format!("[{i}]"))
                .unwrap_or_default();
            let mut flags = vec![if get("holds") == "true" {
                "holds"
            } else {
                "FAILS"
            }];
            if get("equality") == "true" {
                flags.push("equality");
            }
            if get("infinite") == "true" {
                flags.push("infinite");
            }
            let _ = writeln!(
                out,
                "{pad}{}{index}: {} <= {} (slack {}) [{}]",
                get("name"),
                get("lhs"),
                get("rhs"),
                get("slack"),
                flags.join(", ")
            );
            if let Some(Value::Array(detail)) = map.get("detail") {
                for d in detail {
                    write_text(d, depth + 1, out);
                }
            }
        }
        Value::Object(map) => {
            for (k, child) in map {
                if let Some(s) = scalar(child).or_else(|| numeric_list(child)) {
                    let _ = writeln!(out, "{pad}{k}: {s}");
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    write_text(child, depth + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                if let Some(s) = scalar(item).or_else(|| numeric_list(item)) {
                    let _ = writeln!(out, "{pad}- {s}");
                } else if is_certificate(item) {
                    write_text(item, depth, out);
                } else {
                    let _ = writeln!(out, "{pad}- [{i}]");
                    write_text(item, depth + 1, out);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
