//! JSON, CSV and markdown encodings of reports.

use serde::Serialize;
use serde_json::Value;

use crate::dto::TableReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Dotted-path key/value pairs; arrays of scalars are kept inline as JSON.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                walk(&join(&i.to_string()), x, out);
            }
        }
        Value::Array(_) => out.push((prefix.to_string(), v.to_string())),
        _ => out.push((prefix.to_string(), scalar(v))),
    }
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn md_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    s.push_str(&format!("| {} |\n", header.iter().map(|h| md_cell(h)).collect::<Vec<_>>().join(" | ")));
    s.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.iter().map(|c| md_cell(c)).collect::<Vec<_>>().join(" | ")));
    }
    s
}

pub fn generic<T: Serialize>(v: &T, fmt: Format) -> String {
    if fmt == Format::Json {
        return json(v);
    }
    let value = serde_json::to_value(v).expect("reports serialize");
    let rows: Vec<Vec<String>> = flatten(&value).into_iter().map(|(k, v)| vec![k, v]).collect();
    match fmt {
        Format::Csv => csv_rows(&["key", "value"], &rows),
        _ => md_rows(&["key", "value"], &rows),
    }
}

pub fn table(t: &TableReport, fmt: Format) -> String {
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| vec![r.poly.clone(), r.abs_disc.to_string(), r.t.to_string(), r.ramification.clone()])
        .collect();
    match fmt {
        Format::Json => json(t),
        Format::Csv => csv_rows(&["f_K", "abs_disc", "h_K_sqrt_minus3", "ramification_of_3"], &rows),
        Format::Markdown => {
            let mut s = md_rows(&["f_K", "|Δ_K|", "h(K(√−3))", "Ramification of 3"], &rows);
            if !t.inconclusive.is_empty() {
                s.push_str(&format!("\ninconclusive: {}\n", t.inconclusive.join(", ")));
            }
            if let Some(d) = &t.diff {
                s.push_str(&format!(
                    "\ngolden diff: {} ({}/{} rows matched)\n",
                    if d.passes { "pass" } else { "FAIL" },
                    d.matched,
                    d.expected_rows
                ));
                for e in &d.errata {
                    s.push_str(&format!(
                        "erratum at |disc| {}: listed {} corrected to {}\n",
                        e.abs_disc, e.listed_poly, e.corrected_poly
                    ));
                }
                for m in &d.mismatches {
                    s.push_str(&format!("mismatch: {m}\n"));
                }
            }
            s
        }
    }
}
