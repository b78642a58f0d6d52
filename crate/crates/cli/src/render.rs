//! JSON, flat CSV and aligned-table renderings of a report.

use serde_json::Value;

use crate::{Format, Report};

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).expect("serializable") + "\n",
        Format::Csv => csv(r),
        Format::Table => table(r),
    }
}

fn leaves(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                leaves(x, p, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                leaves(x, format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push((path, s.clone())),
        Value::Null => out.push((path, String::new())),
        other => out.push((path, other.to_string())),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `key,value` rows for params and result, then one row per clause.
fn csv(r: &Report) -> String {
    let mut out = String::from("section,key,value\n");
    for (section, v) in [("params", &r.params), ("result", &r.result)] {
        let mut rows = Vec::new();
        leaves(v, String::new(), &mut rows);
        for (k, x) in rows {
            out += &format!("{section},{},{}\n", quote(&k), quote(&x));
        }
    }
    out += "\nreport,description,lhs,rhs,slack,satisfied\n";
    for (name, rep) in &r.reports {
        for c in &rep.clauses {
            out += &format!("{name},{},{},{},{},{}\n", quote(&c.description), c.lhs, c.rhs, c.slack, c.satisfied);
        }
    }
    out
}

fn table(r: &Report) -> String {
    let mut out = format!("scenario: {}\n", r.scenario);
    let mut rows = Vec::new();
    leaves(&r.result, String::new(), &mut rows);
    let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        out += &format!("  {k:<w$}  {v}\n");
    }
    for (name, rep) in &r.reports {
        out += &format!("\n{name} ({})\n", if rep.all_satisfied { "satisfied" } else { "VIOLATED" });
        let dw = rep.clauses.iter().map(|c| c.description.len()).max().unwrap_or(0);
        for c in &rep.clauses {
            out += &format!(
                "  {:<dw$}  {:>10.6}  {:>10.6}  {:>10.3e}  {}\n",
                c.description,
                c.lhs,
                c.rhs,
                c.slack,
                if c.satisfied { "ok" } else { "VIOLATED" }
            );
        }
    }
    if !r.findings.is_empty() {
        out += "\n";
        for f in &r.findings {
            out += &format!("* {f}\n");
        }
    }
    out
}
