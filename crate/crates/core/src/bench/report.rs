//! Report emission: a markdown table for reading, CSV and a versioned
//! structured format (`sbd-report/1`) for machines. Rows are ordered by
//! precision descending; ties and metric-free rows fall back to name order.

use serde::{Deserialize, Serialize};

use super::metrics::EvalResult;
use super::throughput::ThroughputResult;

pub const REPORT_FORMAT: &str = "sbd-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
    Structured,
}

impl ReportFormat {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "markdown" => Some(ReportFormat::Markdown),
            "csv" => Some(ReportFormat::Csv),
            "structured" => Some(ReportFormat::Structured),
            _ => None,
        }
    }
}

/// One named engine's results. Either section may be absent.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportEntry {
    pub name: String,
    pub eval: Option<EvalResult>,
    pub throughput: Option<ThroughputResult>,
}

#[derive(Serialize, Deserialize)]
struct StructuredEval {
    tp: usize,
    fp: usize,
    #[serde(rename = "fn")]
    fn_: usize,
    precision: f64,
    recall: f64,
    f1: f64,
}

#[derive(Serialize, Deserialize)]
struct StructuredThroughput {
    chars_per_second: f64,
    total_chars: usize,
    wall_seconds: f64,
    repetitions: usize,
}

#[derive(Serialize, Deserialize)]
struct StructuredEntry {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eval: Option<StructuredEval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    throughput: Option<StructuredThroughput>,
}

#[derive(Serialize, Deserialize)]
struct StructuredReport {
    format: String,
    entries: Vec<StructuredEntry>,
}

fn sorted(results: &[ReportEntry]) -> Vec<&ReportEntry> {
    let mut rows: Vec<&ReportEntry> = results.iter().collect();
    rows.sort_by(|a, b| {
        let pa = a.eval.as_ref().map(|e| e.precision);
        let pb = b.eval.as_ref().map(|e| e.precision);
        match (pa, pb) {
            (Some(x), Some(y)) => y.partial_cmp(&x).unwrap().then(a.name.cmp(&b.name)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.name.cmp(&b.name),
        }
    });
    rows
}

fn f3(v: f64) -> String {
    format!("{v:.3}")
}

fn opt_metric<F: Fn(&EvalResult) -> f64>(e: &Option<EvalResult>, f: F) -> String {
    e.as_ref().map(|e| f3(f(e))).unwrap_or_else(|| "-".into())
}

fn opt_rate(t: &Option<ThroughputResult>) -> String {
    t.as_ref().map(|t| f3(t.chars_per_second)).unwrap_or_else(|| "-".into())
}

/// Renders the report. CSV and structured outputs carry full-precision
/// values; markdown rounds to 3 decimals.
pub fn emit_report(results: &[ReportEntry], format: ReportFormat) -> String {
    assert!(!results.is_empty(), "report needs at least one entry");
    let rows = sorted(results);
    match format {
        ReportFormat::Markdown => {
            let mut out = String::new();
            out.push_str("| Model | Precision | Recall | F1 | Throughput (chars/sec) |\n");
            out.push_str("|---|---|---|---|---|\n");
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.name,
                    opt_metric(&r.eval, |e| e.precision),
                    opt_metric(&r.eval, |e| e.recall),
                    opt_metric(&r.eval, |e| e.f1),
                    opt_rate(&r.throughput),
                ));
            }
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from("model,precision,recall,f1,chars_per_second\n");
            for r in rows {
                let m = |f: fn(&EvalResult) -> f64| {
                    r.eval.as_ref().map(|e| format!("{:?}", f(e))).unwrap_or_default()
                };
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.name,
                    m(|e| e.precision),
                    m(|e| e.recall),
                    m(|e| e.f1),
                    r.throughput
                        .as_ref()
                        .map(|t| format!("{:?}", t.chars_per_second))
                        .unwrap_or_default(),
                ));
            }
            out
        }
        ReportFormat::Structured => {
            let report = StructuredReport {
                format: REPORT_FORMAT.to_string(),
                entries: rows
                    .iter()
                    .map(|r| StructuredEntry {
                        name: r.name.clone(),
                        eval: r.eval.as_ref().map(|e| StructuredEval {
                            tp: e.tp,
                            fp: e.fp,
                            fn_: e.fn_,
                            precision: e.precision,
                            recall: e.recall,
                            f1: e.f1,
                        }),
                        throughput: r.throughput.as_ref().map(|t| StructuredThroughput {
                            chars_per_second: t.chars_per_second,
                            total_chars: t.total_chars,
                            wall_seconds: t.wall_seconds,
                            repetitions: t.repetitions,
                        }),
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&report).expect("report serializes")
        }
    }
}
