//! Text, JSON and CSV renderings of dimension reports, decomposition tables,
//! censuses and identity sweeps.
//!
//! Exact integers are always written as decimal strings so that 64-bit JSON
//! consumers never truncate them; only `method = complex` values are JSON
//! numbers. `elapsed_ms` is `null` unless timing was requested.
//!
//! CSV layouts:
//! - reports: `n,k,q,method,value,elapsed_ms`
//! - table: `k,orbit_size,dim,product`, then a final `total,,,<total>` row
//! - census: `r,alpha,count`, `alpha` as the coordinate vector `(c_0,...,c_{e-1})`
//! - identities: `identity,q,cases,failures,passed`

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ffmat::{FqField, RankTraceCensus};
use crate::jacquet::{DecompositionRow, DecompositionTable, DimReport, DimValue};
use crate::qcalc::IdentityOutcome;
use crate::{Error, ExactInt, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::param(format!("unknown format {other:?}"))),
        }
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| Error::internal(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::internal(format!("csv: {e}")))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn report_value_json(v: &DimValue) -> Value {
    match v {
        DimValue::Exact(x) => Value::String(x.to_string()),
        DimValue::Approx(x) => json!(x),
    }
}

fn elapsed_ms(r: &DimReport) -> Value {
    r.elapsed.map_or(Value::Null, |d| json!(d.as_millis() as u64))
}

pub fn report_json(r: &DimReport) -> Value {
    json!({
        "n": r.request.n(),
        "k": r.request.k(),
        "q": r.request.q(),
        "method": r.method.name(),
        "value": report_value_json(&r.value),
        "elapsed_ms": elapsed_ms(r),
    })
}

pub fn render_reports(reports: &[DimReport], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(pretty(&Value::Array(reports.iter().map(report_json).collect()))),
        Format::Csv => {
            let mut rows = vec![["n", "k", "q", "method", "value", "elapsed_ms"].map(String::from).to_vec()];
            for r in reports {
                rows.push(vec![
                    r.request.n().to_string(),
                    r.request.k().to_string(),
                    r.request.q().to_string(),
                    r.method.name().to_string(),
                    r.value.to_string(),
                    r.elapsed.map_or(String::new(), |d| d.as_millis().to_string()),
                ]);
            }
            csv_string(rows)
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let _ = write!(
                    out,
                    "dim pi_(N,psi_A{}) for GL({}, F_{}) [{:>7}] = {}",
                    r.request.k(),
                    2 * r.request.n(),
                    r.request.q(),
                    r.method.name(),
                    r.value
                );
                if let Some(d) = r.elapsed {
                    let _ = write!(out, "  ({} ms)", d.as_millis());
                }
                out.push('\n');
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TableRowJson {
    k: usize,
    orbit_size: String,
    dim: String,
    product: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableJson {
    n: usize,
    q: String,
    rows: Vec<TableRowJson>,
    total: String,
}

fn parse_int(s: &str, what: &str) -> Result<ExactInt> {
    s.parse().map_err(|_| Error::param(format!("{what}: {s:?} is not a decimal integer")))
}

pub fn table_json(t: &DecompositionTable) -> String {
    let doc = TableJson {
        n: t.n,
        q: t.q.to_string(),
        rows: t
            .rows
            .iter()
            .map(|r| TableRowJson {
                k: r.k,
                orbit_size: r.orbit_size.to_string(),
                dim: r.dim.to_string(),
                product: r.product.to_string(),
            })
            .collect(),
        total: t.total.to_string(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
    s.push('\n');
    s
}

/// Inverse of [`table_json`]. The total is taken as printed, not recomputed.
pub fn parse_table_json(s: &str) -> Result<DecompositionTable> {
    let doc: TableJson = serde_json::from_str(s).map_err(|e| Error::param(format!("table json: {e}")))?;
    let rows = doc
        .rows
        .iter()
        .map(|r| {
            Ok(DecompositionRow {
                k: r.k,
                orbit_size: parse_int(&r.orbit_size, "orbit_size")?,
                dim: parse_int(&r.dim, "dim")?,
                product: parse_int(&r.product, "product")?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DecompositionTable {
        n: doc.n,
        q: parse_int(&doc.q, "q")?,
        rows,
        total: parse_int(&doc.total, "total")?,
    })
}

pub fn render_table(t: &DecompositionTable, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(table_json(t)),
        Format::Csv => {
            let mut rows = vec![["k", "orbit_size", "dim", "product"].map(String::from).to_vec()];
            for r in &t.rows {
                rows.push(vec![r.k.to_string(), r.orbit_size.to_string(), r.dim.to_string(), r.product.to_string()]);
            }
            rows.push(vec!["total".into(), String::new(), String::new(), t.total.to_string()]);
            csv_string(rows)
        }
        Format::Text => {
            let mut out = format!("restriction of a cuspidal pi of GL({}, F_{}) to N = M({}, F_{})\n", 2 * t.n, t.q, t.n, t.q);
            let _ = writeln!(out, "{:>3}  {:>24}  {:>24}  {:>24}", "k", "a(n,k,q)", "dim_k", "product");
            for r in &t.rows {
                let _ = writeln!(out, "{:>3}  {:>24}  {:>24}  {:>24}", r.k, r.orbit_size, r.dim, r.product);
            }
            let _ = writeln!(out, "total = {} = dim pi", t.total);
            Ok(out)
        }
    }
}

pub fn render_census(c: &RankTraceCensus, field: &FqField, format: Format) -> Result<String> {
    let cells = || {
        (0..=c.n).flat_map(move |r| field.elements().map(move |alpha| (r, alpha)))
    };
    match format {
        Format::Json => {
            let rows: Vec<Value> = cells()
                .map(|(r, alpha)| {
                    json!({
                        "r": r,
                        "alpha": field.coords(alpha),
                        "count": c.count(r, alpha).to_string(),
                    })
                })
                .collect();
            Ok(pretty(&json!({
                "n": c.n,
                "k": c.k,
                "q": field.order(),
                "p": c.p,
                "e": c.e,
                "modulus": field.modulus_coeffs(),
                "rows": rows,
                "total": c.total().to_string(),
            })))
        }
        Format::Csv => {
            let mut rows = vec![["r", "alpha", "count"].map(String::from).to_vec()];
            for (r, alpha) in cells() {
                rows.push(vec![r.to_string(), field.format_elem(alpha), c.count(r, alpha).to_string()]);
            }
            csv_string(rows)
        }
        Format::Text => {
            let mut out = format!(
                "rank/trace census of M({}, F_{}) against A_{} (modulus {:?})\n",
                c.n,
                field.order(),
                c.k,
                field.modulus_coeffs()
            );
            let labels: Vec<String> = field.elements().map(|a| field.format_elem(a)).collect();
            let _ = writeln!(out, "{:>3}  {}", "r", labels.iter().map(|l| format!("{l:>12}")).collect::<String>());
            for r in 0..=c.n {
                let counts: String = field.elements().map(|a| format!("{:>12}", c.count(r, a))).collect();
                let _ = writeln!(out, "{r:>3}  {counts}");
            }
            let _ = writeln!(out, "total = {}", c.total());
            Ok(out)
        }
    }
}

pub fn render_identities(outcomes: &[IdentityOutcome], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let v: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "identity": o.identity,
                        "q": o.q,
                        "cases": o.cases,
                        "passed": o.passed(),
                        "failures": o.failures,
                    })
                })
                .collect();
            Ok(pretty(&Value::Array(v)))
        }
        Format::Csv => {
            let mut rows = vec![["identity", "q", "cases", "failures", "passed"].map(String::from).to_vec()];
            for o in outcomes {
                rows.push(vec![
                    o.identity.to_string(),
                    o.q.to_string(),
                    o.cases.to_string(),
                    o.failures.len().to_string(),
                    o.passed().to_string(),
                ]);
            }
            csv_string(rows)
        }
        Format::Text => {
            let mut qs: Vec<i64> = outcomes.iter().map(|o| o.q).collect();
            qs.dedup();
            let mut names: Vec<&str> = Vec::new();
            for o in outcomes {
                if !names.contains(&o.identity) {
                    names.push(o.identity);
                }
            }
            let mut out = format!("{:<18}", "identity");
            for q in &qs {
                let _ = write!(out, "{:>16}", format!("q={q}"));
            }
            out.push('\n');
            for name in names {
                let _ = write!(out, "{name:<18}");
                for q in &qs {
                    let cell = outcomes.iter().find(|o| o.identity == name && o.q == *q).map_or_else(
                        || "-".to_string(),
                        |o| {
                            if o.passed() {
                                format!("pass ({})", o.cases)
                            } else {
                                format!("FAIL ({}/{})", o.failures.len(), o.cases)
                            }
                        },
                    );
                    let _ = write!(out, "{cell:>16}");
                }
                out.push('\n');
            }
            for o in outcomes.iter().filter(|o| !o.passed()) {
                for f in &o.failures {
                    let _ = writeln!(out, "  {} q={}: {f}", o.identity, o.q);
                }
            }
            Ok(out)
        }
    }
}
