//! The two summary tables: systems with T = S (W contains −I) and systems
//! whose group does not contain −I.

use serde::Serialize;

use coxeter_traces::classes::count_brute_force;
use coxeter_traces::combinatorics::{closed_form_contains_minus_identity, closed_form_count};
use coxeter_traces::roots::{Factor, SystemSpec};
use coxeter_traces::Result;

use crate::report::{report_grid, ReportRow};
use crate::Context;

/// Groups up to this order are also enumerated as a cross-check.
pub const CROSS_CHECK_ORDER: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    /// Systems with −I ∈ W(R), where T(R) = S(R).
    Equal,
    /// Systems with −I ∉ W(R).
    NoMinusIdentity,
}

impl Section {
    pub fn key(self) -> &'static str {
        match self {
            Section::Equal => "section3",
            Section::NoMinusIdentity => "section4",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Section::Equal => "T(R) = S(R): W(R) contains -I",
            Section::NoMinusIdentity => "T(R) < S(R): W(R) does not contain -I",
        }
    }

    pub fn factors(self) -> Vec<Factor> {
        let mut out = Vec::new();
        match self {
            Section::Equal => {
                out.push(Factor::A(1));
                out.extend((2..=10).map(Factor::B));
                out.extend((4..=10).step_by(2).map(Factor::D));
                out.extend([Factor::E7, Factor::E8, Factor::F4, Factor::G2, Factor::H3, Factor::H4]);
                out.extend((4..=12).step_by(2).map(Factor::I2));
            }
            Section::NoMinusIdentity => {
                out.push(Factor::A(0));
                out.extend((2..=10).map(Factor::A));
                out.extend((5..=9).step_by(2).map(Factor::D));
                out.push(Factor::E6);
                out.extend((3..=11).step_by(2).map(Factor::I2));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableSection {
    pub section: &'static str,
    pub title: &'static str,
    pub rows: Vec<ReportRow>,
}

/// Closed-form row, with enumeration and the engine's −I lookup for groups
/// of order at most [`CROSS_CHECK_ORDER`].
pub fn table_row(ctx: &Context, factor: Factor) -> Result<ReportRow> {
    let count = closed_form_count(factor)?;
    let order = factor.group_order();
    let mut row = ReportRow::new(factor.to_string(), count, order, Some(closed_form_contains_minus_identity(factor)));
    if factor.has_matrix_model() && order.is_some_and(|o| o <= CROSS_CHECK_ORDER) {
        let group = ctx.group(&SystemSpec::single(factor))?;
        row.brute_force_agrees = Some(count_brute_force(&group).pair() == count.pair());
        row.minus_identity = Some(group.contains_minus_identity());
    }
    Ok(row)
}

pub fn build_section(ctx: &Context, section: Section) -> Result<TableSection> {
    let rows = section.factors().into_iter().map(|f| table_row(ctx, f)).collect::<Result<_>>()?;
    Ok(TableSection { section: section.key(), title: section.title(), rows })
}

pub fn build_tables(ctx: &Context, sections: &[Section]) -> Result<Vec<TableSection>> {
    sections.iter().map(|&s| build_section(ctx, s)).collect()
}

pub fn render_markdown(tables: &[TableSection]) -> String {
    tables
        .iter()
        .map(|t| format!("## {}\n\n{}", t.title, report_grid(&t.rows).markdown()))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_csv(tables: &[TableSection]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["section".to_string()];
    let all: Vec<ReportRow> = tables.iter().flat_map(|t| t.rows.clone()).collect();
    let grid = report_grid(&all);
    header.extend(grid.headers);
    w.write_record(&header).expect("write to memory");
    let sections = tables.iter().flat_map(|t| std::iter::repeat_n(t.section, t.rows.len()));
    for (section, cells) in sections.zip(grid.rows) {
        let mut record = vec![section.to_string()];
        record.extend(cells);
        w.write_record(&record).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

pub fn render_json(tables: &[TableSection]) -> String {
    let mut s = serde_json::to_string_pretty(tables).expect("tables serialize");
    s.push('\n');
    s
}
