//! Deterministic report emission: JSON (schema qll-report/1), text, and CSV
//! for coefficient tables.

use qll_core::report::{Status, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// What a command produced: verification reports, a table, or a plain JSON
/// object.
pub enum Emitted {
    Reports(Vec<VerificationReport>),
    Table {
        name: String,
        headers: Vec<String>,
        rows: Vec<Vec<String>>,
    },
    Object(serde_json::Value),
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Render the artifact; CSV is defined only for tables.
pub fn emit(artifact: &Emitted, format: Format) -> Result<String, String> {
    match (artifact, format) {
        (Emitted::Reports(reports), Format::Json) => {
            let arr: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
            let v = if arr.len() == 1 {
                arr.into_iter().next().unwrap()
            } else {
                serde_json::Value::Array(arr)
            };
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        (Emitted::Reports(reports), Format::Text) => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&r.one_line());
                out.push('\n');
                for (k, v) in &r.params {
                    out.push_str(&format!("    {k} = {v}\n"));
                }
                for w in &r.witnesses {
                    out.push_str(&format!("    witness: {w}\n"));
                }
            }
            Ok(out)
        }
        (Emitted::Reports(_), Format::Csv) => {
            Err("csv output is only defined for coefficient tables".into())
        }
        (Emitted::Table { headers, rows, .. }, Format::Csv) => {
            let mut out = String::new();
            out.push_str(&headers.iter().map(|h| csv_escape(h)).collect::<Vec<_>>().join(","));
            out.push('\n');
            for row in rows {
                out.push_str(&row.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
            Ok(out)
        }
        (Emitted::Table { name, headers, rows }, Format::Json) => {
            let v = serde_json::json!({
                "schema": qll_core::report::REPORT_SCHEMA,
                "table": name,
                "headers": headers,
                "rows": rows,
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        (Emitted::Table { headers, rows, .. }, Format::Text) => {
            let mut out = String::new();
            out.push_str(&headers.join("  "));
            out.push('\n');
            for row in rows {
                out.push_str(&row.join("  "));
                out.push('\n');
            }
            Ok(out)
        }
        (Emitted::Object(v), Format::Json) | (Emitted::Object(v), Format::Text) => {
            Ok(format!("{}\n", serde_json::to_string_pretty(v).unwrap()))
        }
        (Emitted::Object(_), Format::Csv) => {
            Err("csv output is only defined for coefficient tables".into())
        }
    }
}

/// Exit code for a set of reports per the CLI contract.
pub fn reports_exit_code(reports: &[VerificationReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else if reports.iter().any(|r| r.status == Status::ConfigError) {
        2
    } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
        3
    } else {
        0
    }
}
