//! Report rows and their Markdown / CSV / JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;

use coxeter_traces::classes::TraceCount;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

/// One line of a count or table report. Columns in order: system, T, S,
/// method, |W|, −I ∈ W.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub system: String,
    #[serde(rename = "T")]
    pub traces: u128,
    #[serde(rename = "S")]
    pub supertraces: u128,
    pub method: String,
    pub order: Option<u128>,
    pub minus_identity: Option<bool>,
    /// Whether enumeration reproduced the closed form (table rows only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl ReportRow {
    pub fn new(system: String, count: TraceCount, order: Option<u128>, minus_identity: Option<bool>) -> Self {
        ReportRow {
            system,
            traces: count.traces,
            supertraces: count.supertraces,
            method: count.method.to_string(),
            order,
            minus_identity,
            brute_force_agrees: None,
            timing_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub class_index: usize,
    pub size: usize,
    pub det: String,
    pub char_poly: String,
    pub has_plus_one: bool,
    pub has_minus_one: bool,
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub scope: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// A plain header-plus-cells table, rendered as Markdown or CSV.
pub struct Grid {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn markdown(&self) -> String {
        let mut out = String::new();
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        out.push_str(&line(&self.headers));
        let _ = writeln!(out, "|{}", "---|".repeat(self.headers.len()));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("write to memory");
        for row in &self.rows {
            w.write_record(row).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
    }
}

pub fn report_grid(rows: &[ReportRow]) -> Grid {
    let with_check = rows.iter().any(|r| r.brute_force_agrees.is_some());
    let with_timing = rows.iter().any(|r| r.timing_ms.is_some());
    let mut headers: Vec<String> = ["system", "T", "S", "method", "|W|", "-I in W"].map(String::from).to_vec();
    if with_check {
        headers.push("brute force".into());
    }
    if with_timing {
        headers.push("ms".into());
    }
    let rows = rows
        .iter()
        .map(|r| {
            let mut cells = vec![
                r.system.clone(),
                r.traces.to_string(),
                r.supertraces.to_string(),
                r.method.clone(),
                opt(&r.order),
                r.minus_identity.map_or("-".into(), yes_no),
            ];
            if with_check {
                cells.push(match r.brute_force_agrees {
                    Some(true) => "agrees".into(),
                    Some(false) => "DIFFERS".into(),
                    None => "-".into(),
                });
            }
            if with_timing {
                cells.push(r.timing_ms.map_or("-".into(), |t| format!("{t:.1}")));
            }
            cells
        })
        .collect();
    Grid { headers, rows }
}

pub fn class_grid(rows: &[ClassRow]) -> Grid {
    Grid {
        headers: ["class", "size", "det", "char poly", "+1", "-1"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|c| {
                vec![
                    c.class_index.to_string(),
                    c.size.to_string(),
                    c.det.clone(),
                    c.char_poly.clone(),
                    yes_no(c.has_plus_one),
                    yes_no(c.has_minus_one),
                ]
            })
            .collect(),
    }
}

pub fn check_grid(rows: &[CheckRow]) -> Grid {
    Grid {
        headers: ["scope", "check", "result", "detail"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|c| {
                let result = if c.passed { "PASS" } else { "FAIL" };
                vec![c.scope.clone(), c.check.clone(), result.into(), c.detail.clone()]
            })
            .collect(),
    }
}

pub fn render<T: Serialize>(format: Format, grid: impl FnOnce() -> Grid, value: &T) -> String {
    match format {
        Format::Markdown => grid().markdown(),
        Format::Csv => grid().csv(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("report rows serialize");
            s.push('\n');
            s
        }
    }
}
