//! CSV and JSON renderings of traces, certificates and gallery runs.
//!
//! Output depends only on its input, so identical runs give identical bytes.

use clap::ValueEnum;
use cstar_core::{Certificate, EntryInfo, EntryReport, IterationTrace};
use serde::Serialize;

use crate::error::ReportError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// One named certifier run; errors are kept as their message.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub check: String,
    pub outcome: Result<Certificate, String>,
}

impl Row {
    pub fn new(check: impl Into<String>, outcome: cstar_core::Result<Certificate>) -> Self {
        Row {
            check: check.into(),
            outcome: outcome.map_err(|e| e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        matches!(&self.outcome, Ok(c) if c.passed)
    }
}

#[derive(Serialize)]
struct RowJson<'a> {
    check: &'a str,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

/// Compact decimal for moderate magnitudes, scientific otherwise.
pub fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn opt_num(v: Option<&f64>) -> String {
    v.map_or_else(String::new, |&v| num(v))
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text<T: Serialize + ?Sized>(value: &T) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Columns `n, x_n, residual_norm, apriori_bound`; the last iterate has no
/// residual or bound.
pub fn trace(tr: &IterationTrace, format: Format) -> Result<String, ReportError> {
    match format {
        Format::Json => json_text(tr),
        Format::Csv => csv_text(
            &["n", "x_n", "residual_norm", "apriori_bound"],
            tr.iterates.iter().enumerate().map(|(n, &x)| {
                vec![
                    n.to_string(),
                    num(x),
                    opt_num(tr.residual_norms.get(n)),
                    opt_num(tr.apriori_bounds.get(n)),
                ]
            }),
        ),
    }
}

/// The margin table of one or more certifier runs.
pub fn certificates(rows: &[Row], format: Format) -> Result<String, ReportError> {
    match format {
        Format::Json => {
            let out: Vec<RowJson> = rows
                .iter()
                .map(|r| RowJson {
                    check: &r.check,
                    passed: r.passed(),
                    certificate: r.outcome.as_ref().ok(),
                    error: r.outcome.as_ref().err().map(String::as_str),
                })
                .collect();
            json_text(&out)
        }
        Format::Csv => {
            let mut lines = Vec::new();
            for r in rows {
                lines.push(match &r.outcome {
                    Ok(c) => vec![
                        r.check.clone(),
                        c.passed.to_string(),
                        num(c.worst_margin),
                        c.sample_size.to_string(),
                        c.max_power.to_string(),
                        match &c.witness {
                            Some(w) => serde_json::to_string(w)?,
                            None => String::new(),
                        },
                        c.note.clone().unwrap_or_default(),
                    ],
                    Err(e) => vec![
                        r.check.clone(),
                        "false".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        format!("error: {e}"),
                    ],
                });
            }
            csv_text(
                &[
                    "check",
                    "passed",
                    "worst_margin",
                    "sample_size",
                    "max_power",
                    "witness",
                    "note",
                ],
                lines,
            )
        }
    }
}

pub fn gallery(reports: &[EntryReport], format: Format) -> Result<String, ReportError> {
    match format {
        Format::Json => json_text(reports),
        Format::Csv => csv_text(
            &["id", "check", "expected", "actual", "passed"],
            reports.iter().flat_map(|r| {
                r.checks.iter().map(|c| {
                    vec![
                        r.id.clone(),
                        c.name.clone(),
                        c.expected.clone(),
                        c.actual.clone(),
                        c.passed.to_string(),
                    ]
                })
            }),
        ),
    }
}

pub fn listing(entries: &[EntryInfo], format: Format) -> Result<String, ReportError> {
    match format {
        Format::Json => json_text(entries),
        Format::Csv => csv_text(
            &["id", "location", "complete", "description"],
            entries.iter().map(|e| {
                vec![
                    e.id.into(),
                    e.location.into(),
                    e.complete.to_string(),
                    e.description.into(),
                ]
            }),
        ),
    }
}
