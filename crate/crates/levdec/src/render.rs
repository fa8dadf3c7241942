//! Deterministic table and figure-data emission.
//!
//! Tables mirror the paper's layout: rows are levels in descending order,
//! columns are degrees ascending, and each cell lists "n(labels)" terms
//! sorted lexicographically by label tuple.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::glrep::RepRingElem;
use crate::tha::{BiGradedContent, ColumnFit};
use crate::weyl::ShiftedImage;

/// Output format selector shared by the CLI surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Markdown,
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Weyl scan rows as CSV with a header.
pub fn weyl_scan_csv(rows: &[ShiftedImage]) -> String {
    let mut out = String::from("word,image,degree\n");
    for r in rows {
        let image = r
            .image
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{},{},{}\n",
            csv_quote(&r.word.display()),
            csv_quote(&image),
            r.degree
        ));
    }
    out
}

/// Weyl scan rows as a Markdown table.
pub fn weyl_scan_markdown(rows: &[ShiftedImage]) -> String {
    let mut out = String::from("| Weyl group element | shifted image | degree |\n|---|---|---|\n");
    for r in rows {
        let image = r
            .image
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        out.push_str(&format!(
            "| {} | ({}) | {} |\n",
            r.word.display(),
            image,
            r.degree
        ));
    }
    out
}

#[derive(Serialize, Deserialize)]
struct WeylRowJson {
    word: String,
    letters: Vec<i32>,
    image: Vec<i64>,
    degree: i64,
}

pub fn weyl_scan_json(rows: &[ShiftedImage]) -> serde_json::Value {
    let items: Vec<WeylRowJson> = rows
        .iter()
        .map(|r| WeylRowJson {
            word: r.word.display(),
            letters: r.word.letters.clone(),
            image: r.image.clone(),
            degree: r.degree,
        })
        .collect();
    serde_json::json!({
        "schema": "levdec-weyl-scan/1",
        "rows": serde_json::to_value(items).expect("serializable"),
    })
}

/// Generic (level, degree) -> cell-string table, rows descending in level.
fn grid_to_csv(cells: &BTreeMap<(i64, u32), String>, lmin: i64, lmax: i64, pmax: usize) -> String {
    let mut out = String::from("level");
    for m in 0..=pmax {
        out.push_str(&format!(",m={m}"));
    }
    out.push('\n');
    for l in (lmin..=lmax).rev() {
        out.push_str(&l.to_string());
        for m in 0..=pmax as u32 {
            out.push(',');
            if let Some(s) = cells.get(&(l, m)) {
                out.push_str(&csv_quote(s));
            }
        }
        out.push('\n');
    }
    out
}

fn grid_to_markdown(
    cells: &BTreeMap<(i64, u32), String>,
    lmin: i64,
    lmax: i64,
    pmax: usize,
) -> String {
    let mut out = String::from("| l \\ m |");
    for m in 0..=pmax {
        out.push_str(&format!(" {m} |"));
    }
    out.push('\n');
    out.push_str("|---|");
    for _ in 0..=pmax {
        out.push_str("---|");
    }
    out.push('\n');
    for l in (lmin..=lmax).rev() {
        out.push_str(&format!("| {l} |"));
        for m in 0..=pmax as u32 {
            let s = cells.get(&(l, m)).cloned().unwrap_or_default();
            out.push_str(&format!(" {s} |"));
        }
        out.push('\n');
    }
    out
}

fn nonzero_strings<'a, I>(iter: I) -> BTreeMap<(i64, u32), String>
where
    I: Iterator<Item = (&'a (i64, u32), &'a RepRingElem)>,
{
    iter.filter(|(_, c)| !c.is_zero())
        .map(|(&k, c)| (k, c.render()))
        .collect()
}

/// Column-top table (the paper's Tables 1 and 2).
pub fn tops_csv(fit: &ColumnFit, lmin: i64) -> String {
    let cells = nonzero_strings(fit.tops.iter());
    grid_to_csv(&cells, lmin.max(fit.lmin), fit.lmax, fit.pmax)
}

pub fn tops_markdown(fit: &ColumnFit, lmin: i64) -> String {
    let cells = nonzero_strings(fit.tops.iter());
    grid_to_markdown(&cells, lmin.max(fit.lmin), fit.lmax, fit.pmax)
}

pub fn tops_json(fit: &ColumnFit) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = fit
        .tops
        .iter()
        .map(|(&(l, m), c)| {
            serde_json::json!({
                "level": l,
                "degree": m,
                "content": c.render(),
            })
        })
        .collect();
    serde_json::json!({
        "schema": "levdec-columns/1",
        "tops": rows,
        "boundary_tops": fit.boundary_tops,
    })
}

/// Content table (cells rather than tops).
pub fn content_csv(content: &BiGradedContent) -> String {
    let cells = nonzero_strings(content.cells.iter());
    grid_to_csv(&cells, content.lmin, content.lmax, content.pmax)
}

pub fn content_markdown(content: &BiGradedContent) -> String {
    let cells = nonzero_strings(content.cells.iter());
    grid_to_markdown(&cells, content.lmin, content.lmax, content.pmax)
}

/// Per-cell figure-data records: (level, degree, dim, is_column_top,
/// is_module_lowest) as JSON for external plotting.
pub fn figure_data(content: &BiGradedContent, fit: &ColumnFit) -> serde_json::Value {
    let mut records = Vec::new();
    for (&(l, m), cell) in content.cells.iter() {
        let dim: BigInt = cell.dim();
        records.push(serde_json::json!({
            "level": l,
            "degree": m,
            "dim": dim.to_string(),
            "content": cell.render(),
            "is_column_top": fit.tops.contains_key(&(l, m)),
            "is_module_lowest": content.module_lowest.contains(&(l, m)),
        }));
    }
    serde_json::json!({
        "schema": "levdec-figure-data/1",
        "cells": records,
    })
}

/// Borcherds levels as per-level JSON arrays of (degree, rendered content).
pub fn levels_json(levels: &crate::borcherds::BorcherdsLevels) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (1..=levels.max_level)
        .map(|l| {
            let row: Vec<serde_json::Value> = levels
                .level(l)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| serde_json::json!({ "degree": m, "content": c.render() }))
                .collect();
            serde_json::json!({ "level": l, "content": row })
        })
        .collect();
    serde_json::json!({
        "schema": "levdec-levels/1",
        "grading_node": levels.grading_node,
        "max_level": levels.max_level,
        "max_degree": levels.max_degree,
        "levels": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::WeylWord;

    #[test]
    fn csv_escaping_and_layout() {
        let rows = vec![ShiftedImage {
            word: WeylWord { letters: vec![8, 5] },
            image: vec![1, 0, -3],
            degree: 2,
        }];
        let csv = weyl_scan_csv(&rows);
        assert_eq!(csv, "word,image,degree\nw_8w_5,1 0 -3,2\n");
        let md = weyl_scan_markdown(&rows);
        assert!(md.contains("| w_8w_5 | (1, 0, -3) | 2 |"));
    }
}
