//! Text renderings of the records: JSON, CSV and Markdown.

use anyhow::Result;
use serde::Serialize;

use kitaev_defects::fusion::FusionOutcome;

use crate::records::{
    BasisRecord, DefectListing, FpDimRecord, FuseRecord, TablesRecord, Triples, VerifyRecord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn markdown_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut s = format!(
        "| {} |\n|{}\n",
        header.join(" | "),
        " --- |".repeat(header.len())
    );
    for r in rows {
        let cells: Vec<String> = r.into_iter().map(|c| c.replace('|', "\\|")).collect();
        s.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    s
}

/// `a/b zeta^k + ...` with `zeta` a primitive root of the coefficient field.
pub fn triples_text(t: &Triples) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|&(pow, n, d)| {
            let c = if d == 1 {
                n.to_string()
            } else {
                format!("{n}/{d}")
            };
            if pow == 0 {
                c
            } else {
                format!("{c}*z^{pow}")
            }
        })
        .collect();
    parts.join(" + ")
}

/// Terms of one component, e.g. `X:1/X:1:0,1 + 2*T/T:0,0`; `0` if empty.
pub fn terms_text(o: &FusionOutcome, index: usize) -> String {
    let c = &o.components[index];
    if c.terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = c
        .terms
        .iter()
        .map(|t| {
            if t.multiplicity == 1 {
                t.defect.to_string()
            } else {
                format!("{}*{}", t.multiplicity, t.defect)
            }
        })
        .collect();
    parts.join(" + ")
}

fn outcome_rows(o: &FusionOutcome) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for c in &o.components {
        for t in &c.terms {
            rows.push(vec![
                o.mode.clone(),
                o.left.to_string(),
                o.right.to_string(),
                c.mu.to_string(),
                c.nu.to_string(),
                t.defect.to_string(),
                t.multiplicity.to_string(),
            ]);
        }
    }
    rows
}

const OUTCOME_HEADER: [&str; 7] = [
    "mode",
    "left",
    "right",
    "mu",
    "nu",
    "defect",
    "multiplicity",
];

fn outcome_summary_rows(outcomes: &[FusionOutcome]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for o in outcomes {
        for (i, c) in o.components.iter().enumerate() {
            rows.push(vec![
                o.left.to_string(),
                o.right.to_string(),
                format!("{},{}", c.mu, c.nu),
                terms_text(o, i),
            ]);
        }
    }
    rows
}

pub fn defects(r: &DefectListing, format: Format) -> Result<String> {
    let idem = |d: &crate::records::DefectRecord| {
        let terms: Vec<String> = d
            .idempotent
            .iter()
            .map(|t| {
                format!(
                    "({})[{},{};{},{}]",
                    triples_text(&t.coefficient),
                    t.bottom,
                    t.top,
                    t.g,
                    t.h
                )
            })
            .collect();
        terms.join(" + ")
    };
    let rows = || {
        r.defects
            .iter()
            .map(|d| {
                vec![
                    d.defect.to_string(),
                    d.bottom_object.clone(),
                    d.top_object.clone(),
                    d.fpdim.clone(),
                    idem(d),
                ]
            })
            .collect()
    };
    let header = [
        "defect",
        "bottom_object",
        "top_object",
        "fpdim",
        "idempotent",
    ];
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&header, rows()),
        Format::Markdown => Ok(format!(
            "{} simple defects between {} and {} at p = {}\n\n{}",
            r.defects.len(),
            r.bottom,
            r.top,
            r.p,
            markdown_table(&header, rows())
        )),
    }
}

fn basis_rows(basis: &[BasisRecord]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for b in basis {
        for (i, v) in b.vectors.iter().enumerate() {
            for e in v {
                rows.push(vec![
                    format!("{},{}", b.mu, b.nu),
                    b.target.to_string(),
                    i.to_string(),
                    format!("{:?}", e.labels),
                    format!("({},{})", e.hole1.0, e.hole1.1),
                    format!("({},{})", e.hole2.0, e.hole2.1),
                    triples_text(&e.coefficient),
                ]);
            }
        }
    }
    rows
}

const BASIS_HEADER: [&str; 7] = [
    "component",
    "target",
    "vector",
    "labels",
    "hole1",
    "hole2",
    "coefficient",
];

pub fn fuse(r: &FuseRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => json(r),
        Format::Csv => match &r.basis {
            None => csv_rows(&OUTCOME_HEADER, outcome_rows(&r.outcome)),
            Some(b) => csv_rows(&BASIS_HEADER, basis_rows(b)),
        },
        Format::Markdown => {
            let o = &r.outcome;
            let mut s = format!(
                "{} fusion of {} and {} at p = {} ({} / {})\n\n",
                o.mode, o.left, o.right, r.p, o.bottom, o.top
            );
            s.push_str(&markdown_table(
                &["left", "right", "component", "outcome"],
                outcome_summary_rows(std::slice::from_ref(o)),
            ));
            if let Some(b) = &r.basis {
                s.push('\n');
                s.push_str(&markdown_table(&BASIS_HEADER, basis_rows(b)));
            }
            Ok(s)
        }
    }
}

pub fn tables(r: &TablesRecord, format: Format) -> Result<String> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(
            &OUTCOME_HEADER,
            r.outcomes.iter().flat_map(outcome_rows).collect(),
        ),
        Format::Markdown => Ok(format!(
            "{} fusions at p = {}\n\n{}",
            r.mode,
            r.p,
            markdown_table(
                &["left", "right", "component", "outcome"],
                outcome_summary_rows(&r.outcomes)
            )
        )),
    }
}

pub fn verify(r: &VerifyRecord, format: Format) -> Result<String> {
    let summary = || {
        r.reports
            .iter()
            .map(|x| {
                vec![
                    x.kind.to_string(),
                    x.p.to_string(),
                    x.pairs_checked.to_string(),
                    x.components_checked.to_string(),
                    x.mismatches.len().to_string(),
                    x.fp_violations.len().to_string(),
                ]
            })
            .collect()
    };
    let header = [
        "kind",
        "p",
        "pairs",
        "components",
        "mismatches",
        "fp_violations",
    ];
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&header, summary()),
        Format::Markdown => {
            let mut s = format!(
                "verification at p = {} ({}, seed {}): {}\n\n{}",
                r.p,
                r.scope,
                r.seed,
                if r.passed { "PASS" } else { "FAIL" },
                markdown_table(&header, summary())
            );
            let mismatches: Vec<Vec<String>> = r
                .reports
                .iter()
                .flat_map(|x| &x.mismatches)
                .map(|m| {
                    let list = |v: &[kitaev_defects::fusion::FusionTerm]| {
                        v.iter()
                            .map(|t| format!("{}*{}", t.multiplicity, t.defect))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    };
                    vec![
                        m.kind.to_string(),
                        m.left.to_string(),
                        m.right.to_string(),
                        m.component.map_or("-".into(), |(a, b)| format!("{a},{b}")),
                        list(&m.computed),
                        list(&m.expected),
                        m.note.clone(),
                    ]
                })
                .collect();
            if !mismatches.is_empty() {
                s.push('\n');
                s.push_str(&markdown_table(
                    &[
                        "kind",
                        "left",
                        "right",
                        "component",
                        "computed",
                        "expected",
                        "note",
                    ],
                    mismatches,
                ));
            }
            for x in &r.reports {
                for v in &x.fp_violations {
                    s.push_str(&format!("\nFP violation: {v}"));
                }
            }
            Ok(s)
        }
    }
}

pub fn fpdim(r: &FpDimRecord, format: Format) -> Result<String> {
    let rows = || vec![vec![r.defect.to_string(), r.p.to_string(), r.fpdim.clone()]];
    match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&["defect", "p", "fpdim"], rows()),
        Format::Markdown => Ok(markdown_table(&["defect", "p", "fpdim"], rows())),
    }
}
