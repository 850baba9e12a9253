//! JSON values for domain objects and the plain-text table renderer.

use bwb_core::charring::FormalCharacter;
use bwb_core::{IndexResult, Rational, RootSystem, Weight};
use serde_json::{json, Map, Value};

use crate::config::Format;

/// An exact rational as a JSON integer when integral, else as `"p/q"`.
pub fn rational(q: &Rational) -> Value {
    if q.is_integer() {
        json!(*q.numer())
    } else {
        Value::String(q.to_string())
    }
}

/// Weight display: Dynkin labels, or root coordinates when requested.
#[derive(Debug, Clone, Copy)]
pub struct WeightStyle<'a> {
    pub rs: &'a RootSystem,
    pub root_coords: bool,
}

impl WeightStyle<'_> {
    pub fn weight(&self, w: &Weight) -> Value {
        let coords = if self.root_coords {
            self.rs
                .root_coordinates(w)
                .unwrap_or_else(|_| w.coords().to_vec())
        } else {
            w.coords().to_vec()
        };
        Value::Array(coords.iter().map(rational).collect())
    }

    pub fn index(&self, r: &IndexResult) -> Value {
        match r {
            IndexResult::Zero => json!({ "zero": true }),
            IndexResult::Irreducible {
                sign,
                lambda,
                length,
                dimension,
            } => json!({
                "zero": false,
                "sign": sign,
                "lambda": self.weight(lambda),
                "length": length,
                "dimension": dimension_value(*dimension),
            }),
        }
    }

    /// Terms sorted by weight, as `{mult, weight}` records.
    pub fn character(&self, c: &FormalCharacter) -> Value {
        Value::Array(
            c.iter()
                .map(|(w, m)| json!({ "mult": m, "weight": self.weight(w) }))
                .collect(),
        )
    }
}

fn dimension_value(d: u128) -> Value {
    match u64::try_from(d) {
        Ok(v) => json!(v),
        Err(_) => Value::String(d.to_string()),
    }
}

/// Serializes one record. Keys come out sorted because `serde_json::Map`
/// is ordered.
pub fn emit(value: &Value, format: Format) -> String {
    match format {
        Format::Json => value.to_string(),
        Format::Table => table(value),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("({})", parts.join(","))
        }
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}={}", cell(x)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn rows_table(rows: &[Map<String, Value>]) -> String {
    let mut headers: Vec<&String> = Vec::new();
    for r in rows {
        for k in r.keys() {
            if !headers.contains(&k) {
                headers.push(k);
            }
        }
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| headers.iter().map(|h| r.get(*h).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| body.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(headers.iter().map(|h| h.to_string()).collect())];
    out.extend(body.into_iter().map(line));
    out.join("\n")
}

fn table(value: &Value) -> String {
    match value {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            let rows: Vec<Map<String, Value>> = items
                .iter()
                .filter_map(|x| x.as_object().cloned())
                .collect();
            rows_table(&rows)
        }
        Value::Object(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            let mut lines = Vec::new();
            for (k, v) in m {
                match v {
                    Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                        lines.push(format!("{k}:"));
                        for l in table(v).lines() {
                            lines.push(format!("  {l}"));
                        }
                    }
                    _ => lines.push(format!("{k:<width$}  {}", cell(v))),
                }
            }
            lines.join("\n")
        }
        other => cell(other),
    }
}
