//! Serialization of results as JSON, CSV and fixed-width text tables.
//!
//! JSON and CSV carry the shortest decimal form that reads back to the same
//! `f64`; tables round to six significant digits.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use exgd::model_selection::Divergence;
use exgd::{ComparisonTable, FitResult, Sample};

pub const SPEC_VERSION: u32 = 1;

/// `value` as JSON with the schema version prepended.
pub fn versioned<T: Serialize>(value: &T) -> Value {
    let mut obj = Map::new();
    obj.insert("spec_version".into(), json!(SPEC_VERSION));
    match serde_json::to_value(value).unwrap_or(Value::Null) {
        Value::Object(m) => obj.extend(m),
        other => {
            obj.insert("value".into(), other);
        }
    }
    Value::Object(obj)
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Six significant digits, switching to exponent form for very small or
/// very large magnitudes.
pub fn sig6(v: f64) -> String {
    if v.is_nan() {
        return "NA".into();
    }
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.5e}")
    }
}

/// Shortest round-trip representation; empty for NaN.
pub fn exact(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        format!("{v:?}")
    }
}

fn bracket(params: &[f64], fmt: fn(f64) -> String) -> String {
    match params {
        [one] => fmt(*one),
        many => format!(
            "[{}]",
            many.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(", ")
        ),
    }
}

pub fn fit_json(fit: &FitResult, sample: &Sample) -> Value {
    json!({
        "spec_version": SPEC_VERSION,
        "method": fit.method,
        "alpha": fit.params.alpha(),
        "theta": fit.params.theta(),
        "objective_at_optimum": fit.objective_at_optimum,
        "converged": fit.converged,
        "iterations": fit.iterations,
        "neg_log_lik": fit.neg_log_lik,
        "n": sample.n(),
        "source": sample.source(),
    })
}

pub fn fit_csv(fit: &FitResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record([
        "method", "alpha", "theta", "objective_at_optimum", "converged", "iterations", "neg_log_lik",
    ]);
    let _ = w.write_record([
        fit.method.to_string(),
        exact(fit.params.alpha()),
        exact(fit.params.theta()),
        exact(fit.objective_at_optimum),
        fit.converged.to_string(),
        fit.iterations.to_string(),
        exact(fit.neg_log_lik),
    ]);
    finish(w)
}

pub fn fit_table(fit: &FitResult, sample: &Sample) -> String {
    let mut s = String::new();
    let rows = [
        ("method", fit.method.to_string()),
        ("n", sample.n().to_string()),
        ("alpha", sig6(fit.params.alpha())),
        ("theta", sig6(fit.params.theta())),
        ("objective", sig6(fit.objective_at_optimum)),
        ("-LogL", sig6(fit.neg_log_lik)),
        ("converged", fit.converged.to_string()),
        ("iterations", fit.iterations.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<12} {v}");
    }
    s
}

pub fn comparison_json(table: &ComparisonTable, divergences: Option<&[Divergence]>) -> Value {
    let mut v = versioned(table);
    if let (Some(d), Value::Object(m)) = (divergences, &mut v) {
        m.insert("divergences".into(), serde_json::to_value(d).unwrap_or(Value::Null));
    }
    v
}

const HEADER: [&str; 8] = ["Model", "MLE", "-LogL", "AIC", "CAIC", "HQIC", "BIC", "KS"];

pub fn comparison_csv(table: &ComparisonTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(HEADER);
    for r in &table.rows {
        let _ = w.write_record([
            r.model.to_string(),
            bracket(&r.params, exact),
            exact(r.neg_log_lik),
            exact(r.aic),
            exact(r.caic),
            exact(r.hqic),
            exact(r.bic),
            exact(r.ks),
        ]);
    }
    finish(w)
}

pub fn comparison_table(table: &ComparisonTable, divergences: Option<&[Divergence]>) -> String {
    let mut cells: Vec<Vec<String>> = vec![HEADER.iter().map(|h| h.to_string()).collect()];
    for r in &table.rows {
        cells.push(vec![
            r.model.to_string(),
            if r.params.is_empty() {
                "failed".into()
            } else {
                bracket(&r.params, sig6)
            },
            sig6(r.neg_log_lik),
            sig6(r.aic),
            sig6(r.caic),
            sig6(r.hqic),
            sig6(r.bic),
            sig6(r.ks),
        ]);
    }
    let mut out = align(&cells);
    let _ = writeln!(out, "\nn = {}, source: {}", table.n, table.source);
    for r in table.rows.iter().filter(|r| r.error.is_some()) {
        let _ = writeln!(out, "{}: {}", r.model, r.error.as_deref().unwrap_or(""));
    }
    if let Some(div) = divergences.filter(|d| !d.is_empty()) {
        let _ = writeln!(out, "\ndifferences from the reference values:");
        for d in div {
            let _ = writeln!(
                out,
                "  {:<5} {:<7} printed {:<12} recomputed {}{}",
                d.model.to_string(),
                d.column,
                sig6(d.printed),
                sig6(d.recomputed),
                if d.suspected_typo { "  (suspected misprint)" } else { "" }
            );
        }
    }
    out
}

/// Left-aligned columns separated by two spaces.
pub fn align(cells: &[Vec<String>]) -> String {
    let cols = cells.iter().map(|r| r.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| cells.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

pub fn csv_from_rows(header: &[&str], rows: &[Vec<f64>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(header);
    for r in rows {
        let _ = w.write_record(r.iter().map(|v| exact(*v)));
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().unwrap_or_default();
    String::from_utf8(bytes).unwrap_or_default()
}
