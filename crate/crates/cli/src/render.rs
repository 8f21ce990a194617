//! Plain-text rendering. State records print as kets, e.g.
//! `+0.353553 |01>_K |01>_X |0>_V`.

use std::fmt::Write;

use advinfo_core::report::Report;
use serde_json::Value;

fn as_ket(rec: &Value) -> Option<String> {
    let o = rec.as_object()?;
    if o.len() != 5 {
        return None;
    }
    let (k, x, v) = (o.get("k")?.as_str()?, o.get("x")?.as_str()?, o.get("v")?.as_u64()?);
    let (re, im) = (o.get("re")?.as_f64()?, o.get("im")?.as_f64()?);
    let coeff = if im.abs() < 1e-12 {
        format!("{re:+.6}")
    } else {
        format!("({re:+.6}{im:+.6}i)")
    };
    Some(format!("{coeff} |{k}>_K |{x}>_X |{v}>_V"))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Array(items) if !items.is_empty() && items.iter().all(|i| as_ket(i).is_some()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for i in items {
                let _ = writeln!(out, "{pad}  {}", as_ket(i).unwrap_or_default());
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (n, i) in items.iter().enumerate() {
                render_value(out, &format!("[{n}]"), i, indent + 2);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", parts.join(", "));
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                render_value(out, k, v, indent + 2);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar(other));
        }
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "== {} (advinfo {}) ==", report.scenario, report.version);
    for (k, v) in &report.inputs {
        let _ = writeln!(out, "input {k} = {}", scalar(v));
    }
    for (k, v) in &report.results {
        render_value(&mut out, k, v, 0);
    }
    for c in &report.checks {
        let _ = writeln!(out, "check {}: {}", c.name, if c.passed { "PASS" } else { "FAIL" });
    }
    out
}
