//! Symbolic reference fusion tables (`data/fusion_tables.txt`, corrected by
//! `data/errata.txt`) and their evaluation at concrete defects.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};
use crate::expr::{Cond, Env, Expr};
use crate::fusion::{FusionComponent, FusionOutcome, FusionTerm};
use crate::tubes::Defect;
use crate::walls::{wall_fuse, Wall};

const TABLES: &str = include_str!("../../data/fusion_tables.txt");
const ERRATA: &str = include_str!("../../data/errata.txt");

/// Which table a cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Horizontal,
    Vertical,
}

impl Kind {
    fn parse(s: &str) -> Result<Kind> {
        match s {
            "H" => Ok(Kind::Horizontal),
            "V" => Ok(Kind::Vertical),
            _ => Err(Error::Oracle(format!("unknown table kind `{s}`"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Horizontal => "H",
            Kind::Vertical => "V",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum WallPattern {
    Fixed(Wall),
    X(String),
    F(String),
}

/// A defect with symbolic wall parameters and labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectPattern {
    bottom: WallPattern,
    top: WallPattern,
    labels: Vec<String>,
    text: String,
}

#[derive(Clone, Debug)]
enum WallTemplate {
    Fixed(Wall),
    X(Expr),
    F(Expr),
}

#[derive(Clone, Debug)]
struct DefectTemplate {
    bottom: WallTemplate,
    top: WallTemplate,
    labels: Vec<Expr>,
}

#[derive(Clone, Debug)]
struct Term {
    delta: Option<Expr>,
    times_p: bool,
    sum_vars: Vec<String>,
    defect: DefectTemplate,
}

#[derive(Clone, Debug)]
enum Outcome {
    Term(Term),
    Cases(Vec<(Cond, Term)>),
}

/// One table cell.
#[derive(Clone, Debug)]
pub struct Cell {
    pub kind: Kind,
    pub row: DefectPattern,
    pub col: DefectPattern,
    /// The outcome as written in the data file.
    pub text: String,
    /// Whether the cell was replaced by an erratum.
    pub corrected: bool,
    outcome: Outcome,
}

/// All reference cells.
#[derive(Clone, Debug)]
pub struct FusionTables {
    pub cells: Vec<Cell>,
}

fn oracle_err(text: &str, reason: &str) -> Error {
    Error::Oracle(format!("`{text}`: {reason}"))
}

/// Index of the bracket closing the one at `open`.
fn closing(s: &str, open: usize) -> Result<usize> {
    let (o, c) = match s.as_bytes()[open] {
        b'[' => (b'[', b']'),
        b'(' => (b'(', b')'),
        b'{' => (b'{', b'}'),
        _ => return Err(oracle_err(s, "expected a bracket")),
    };
    let mut depth = 0;
    for (i, &b) in s.as_bytes().iter().enumerate().skip(open) {
        if b == o {
            depth += 1;
        } else if b == c {
            depth -= 1;
            if depth == 0 {
                return Ok(i);
            }
        }
    }
    Err(oracle_err(s, "unbalanced brackets"))
}

/// Splits at `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Splits `W/W(labels)` into wall texts and the label list.
fn split_defect(s: &str) -> Result<(&str, &str, Vec<&str>)> {
    let s = s.trim();
    let (walls, labels) = match s.ends_with(')') {
        true => {
            let open = (0..s.len())
                .rev()
                .find(|&i| s.as_bytes()[i] == b'(' && closing(s, i).ok() == Some(s.len() - 1))
                .ok_or_else(|| oracle_err(s, "unbalanced label list"))?;
            (
                &s[..open],
                split_top(&s[open + 1..s.len() - 1], ',')
                    .into_iter()
                    .map(str::trim)
                    .collect(),
            )
        }
        false => (s, Vec::new()),
    };
    let parts = split_top(walls, '/');
    if parts.len() != 2 {
        return Err(oracle_err(s, "expected BOTTOM/TOP"));
    }
    Ok((parts[0].trim(), parts[1].trim(), labels))
}

fn split_wall(s: &str) -> Result<(&str, Option<&str>)> {
    match s {
        "T" | "L" | "R" | "F0" => Ok((s, None)),
        _ if (s.starts_with("X[") || s.starts_with("F[")) && s.ends_with(']') => {
            Ok((&s[..1], Some(&s[2..s.len() - 1])))
        }
        _ => Err(oracle_err(s, "unknown wall")),
    }
}

fn fixed_wall(s: &str) -> Wall {
    match s {
        "T" => Wall::T,
        "L" => Wall::L,
        "R" => Wall::R,
        _ => Wall::F0,
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphabetic())
}

impl DefectPattern {
    fn parse(s: &str) -> Result<Self> {
        let (b, t, labels) = split_defect(s)?;
        let wall = |w: &str| -> Result<WallPattern> {
            Ok(match split_wall(w)? {
                (kind, None) => WallPattern::Fixed(fixed_wall(kind)),
                (kind, Some(v)) if is_identifier(v) => {
                    if kind == "X" {
                        WallPattern::X(v.to_string())
                    } else {
                        WallPattern::F(v.to_string())
                    }
                }
                _ => {
                    return Err(oracle_err(
                        s,
                        "wall parameters of a pattern must be variables",
                    ))
                }
            })
        };
        if let Some(l) = labels.iter().find(|l| !is_identifier(l)) {
            return Err(oracle_err(
                s,
                &format!("pattern label `{l}` is not a variable"),
            ));
        }
        Ok(DefectPattern {
            bottom: wall(b)?,
            top: wall(t)?,
            labels: labels.into_iter().map(String::from).collect(),
            text: s.trim().to_string(),
        })
    }

    /// Extends `env` with the bindings that make `d` match, if any.
    fn bind(&self, d: &Defect, env: &mut Env) -> bool {
        fn bind_var(env: &mut Env, v: &str, x: u32) -> bool {
            match env.get(v) {
                Some(&y) => y == x,
                None => {
                    env.insert(v.to_string(), x);
                    true
                }
            }
        }
        let wall = |pat: &WallPattern, w: Wall, env: &mut Env| match (pat, w) {
            (WallPattern::Fixed(f), w) => *f == w,
            (WallPattern::X(v), Wall::X(k)) | (WallPattern::F(v), Wall::F(k)) => {
                bind_var(env, v, k)
            }
            _ => false,
        };
        if self.labels.len() != d.labels.len()
            || !wall(&self.bottom, d.bottom, env)
            || !wall(&self.top, d.top, env)
        {
            return false;
        }
        // Different parameter names on walls of the same kind mean different values.
        match (&self.bottom, &self.top) {
            (WallPattern::X(u), WallPattern::X(v)) | (WallPattern::F(u), WallPattern::F(v))
                if u != v && d.bottom == d.top =>
            {
                return false;
            }
            _ => {}
        }
        self.labels
            .iter()
            .zip(&d.labels)
            .all(|(v, &x)| bind_var(env, v, x))
    }
}

impl fmt::Display for DefectPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl DefectTemplate {
    fn parse(s: &str) -> Result<Self> {
        let (b, t, labels) = split_defect(s)?;
        let wall = |w: &str| -> Result<WallTemplate> {
            Ok(match split_wall(w)? {
                (kind, None) => WallTemplate::Fixed(fixed_wall(kind)),
                ("X", Some(e)) => WallTemplate::X(Expr::parse(e)?),
                (_, Some(e)) => WallTemplate::F(Expr::parse(e)?),
            })
        };
        Ok(DefectTemplate {
            bottom: wall(b)?,
            top: wall(t)?,
            labels: labels.into_iter().map(Expr::parse).collect::<Result<_>>()?,
        })
    }

    fn eval(&self, env: &Env, p: PrimeModulus) -> Result<Defect> {
        let wall = |w: &WallTemplate| -> Result<Wall> {
            Ok(match w {
                WallTemplate::Fixed(w) => *w,
                WallTemplate::X(e) => Wall::X(e.eval(env, p)?),
                WallTemplate::F(e) => Wall::F(e.eval(env, p)?),
            })
        };
        let labels = self
            .labels
            .iter()
            .map(|e| e.eval(env, p))
            .collect::<Result<_>>()?;
        let d = Defect::new(wall(&self.bottom)?, wall(&self.top)?, labels);
        d.validate(p)
            .map_err(|e| Error::Oracle(format!("outcome evaluates to an invalid defect: {e}")))?;
        Ok(d)
    }
}

impl Term {
    fn parse(s: &str) -> Result<Self> {
        let mut rest = s.trim();
        let mut delta = None;
        if rest.starts_with("delta[") {
            let end = closing(rest, 5)?;
            delta = Some(Expr::parse(&rest[6..end])?);
            rest = rest[end + 1..].trim_start();
        }
        let times_p = rest.starts_with("p*");
        if times_p {
            rest = rest[2..].trim_start();
        }
        let mut sum_vars = Vec::new();
        if rest.starts_with("sum[") {
            let end = closing(rest, 3)?;
            sum_vars = rest[4..end]
                .split(',')
                .map(|v| v.trim().to_string())
                .collect();
            if let Some(v) = sum_vars.iter().find(|v| !is_identifier(v)) {
                return Err(oracle_err(
                    s,
                    &format!("summation variable `{v}` is not a name"),
                ));
            }
            rest = rest[end + 1..].trim_start();
        }
        if rest.ends_with('}') {
            let open = rest
                .rfind('{')
                .ok_or_else(|| oracle_err(s, "unbalanced component index"))?;
            let idx = &rest[open + 1..rest.len() - 1];
            if !idx.split(',').all(|v| matches!(v.trim(), "mu" | "nu")) {
                return Err(oracle_err(s, "component index must name mu and/or nu"));
            }
            rest = rest[..open].trim_end();
        }
        Ok(Term {
            delta,
            times_p,
            sum_vars,
            defect: DefectTemplate::parse(rest)?,
        })
    }

    fn expand(&self, env: &Env, p: PrimeModulus, out: &mut BTreeMap<Defect, u32>) -> Result<()> {
        if let Some(d) = &self.delta {
            let diff = p.sub(env["nu"], env["mu"]);
            if d.eval(env, p)? != diff {
                return Ok(());
            }
        }
        let mult = if self.times_p { p.get() } else { 1 };
        let mut env = env.clone();
        let n = self.sum_vars.len() as u32;
        for code in 0..p.get().pow(n) {
            let mut c = code;
            for v in &self.sum_vars {
                env.insert(v.clone(), c % p.get());
                c /= p.get();
            }
            *out.entry(self.defect.eval(&env, p)?).or_insert(0) += mult;
        }
        Ok(())
    }
}

impl Outcome {
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("case ") {
            None => Ok(Outcome::Term(Term::parse(s)?)),
            Some(body) => body
                .split(" | ")
                .map(|branch| {
                    let (c, t) = branch
                        .split_once("=>")
                        .ok_or_else(|| oracle_err(s, "case branch without `=>`"))?;
                    Ok((Cond::parse(c)?, Term::parse(t)?))
                })
                .collect::<Result<_>>()
                .map(Outcome::Cases),
        }
    }

    fn expand(&self, env: &Env, p: PrimeModulus) -> Result<BTreeMap<Defect, u32>> {
        let mut out = BTreeMap::new();
        match self {
            Outcome::Term(t) => t.expand(env, p, &mut out)?,
            Outcome::Cases(cases) => {
                for (cond, t) in cases {
                    if cond.holds(env, p)? {
                        t.expand(env, p, &mut out)?;
                        break;
                    }
                }
            }
        }
        Ok(out)
    }
}

fn parse_line(line: &str) -> Result<Option<(Kind, DefectPattern, DefectPattern, String)>> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let cols: Vec<&str> = line.splitn(4, " | ").collect();
    if cols.len() != 4 {
        return Err(oracle_err(line, "expected KIND | row | column | outcome"));
    }
    Ok(Some((
        Kind::parse(cols[0].trim())?,
        DefectPattern::parse(cols[1])?,
        DefectPattern::parse(cols[2])?,
        cols[3].trim().to_string(),
    )))
}

impl FusionTables {
    /// Parses a table and applies errata, each of which must replace
    /// exactly one existing cell.
    pub fn parse(tables: &str, errata: &str) -> Result<Self> {
        // Outcomes are parsed after errata, so a corrected cell may be
        // malformed as printed.
        let mut raw = Vec::new();
        for line in tables.lines() {
            if let Some(cell) = parse_line(line)? {
                raw.push((cell, false));
            }
        }
        for line in errata.lines() {
            if let Some((kind, row, col, text)) = parse_line(line)? {
                let ((_, _, _, old), corrected) = raw
                    .iter_mut()
                    .find(|((k, r, c, _), _)| *k == kind && *r == row && *c == col)
                    .ok_or_else(|| {
                        Error::Oracle(format!("erratum for missing cell {kind} | {row} | {col}"))
                    })?;
                *old = text;
                *corrected = true;
            }
        }
        let cells = raw
            .into_iter()
            .map(|((kind, row, col, text), corrected)| {
                let outcome = Outcome::parse(&text)
                    .map_err(|e| Error::Oracle(format!("{kind} | {row} | {col}: {e}")))?;
                Ok(Cell {
                    kind,
                    row,
                    col,
                    text,
                    corrected,
                    outcome,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FusionTables { cells })
    }

    /// The shipped tables with errata applied.
    pub fn standard() -> &'static FusionTables {
        static T: OnceLock<FusionTables> = OnceLock::new();
        T.get_or_init(|| FusionTables::parse(TABLES, ERRATA).expect("shipped fusion tables parse"))
    }

    /// The unique cell matching `row` and `col`, with its bindings.
    pub fn lookup(&self, kind: Kind, row: &Defect, col: &Defect) -> Result<(&Cell, Env)> {
        let mut found = Vec::new();
        for cell in self.cells.iter().filter(|c| c.kind == kind) {
            let mut env = Env::new();
            if cell.row.bind(row, &mut env) && cell.col.bind(col, &mut env) {
                found.push((cell, env));
            }
        }
        match found.len() {
            0 => Err(Error::PatternNotFound(format!("{kind} {row} x {col}"))),
            1 => Ok(found.pop().expect("one match")),
            _ => Err(Error::Oracle(format!(
                "{kind} {row} x {col} matches several cells: {}",
                found
                    .iter()
                    .map(|(c, _)| format!("{} | {}", c.row, c.col))
                    .collect::<Vec<_>>()
                    .join("; ")
            ))),
        }
    }

    /// Expected outcome of `row (x) col` (horizontal) or `row o col`
    /// (vertical, `row` below), evaluated per tensor component.
    pub fn expected(
        &self,
        kind: Kind,
        row: &Defect,
        col: &Defect,
        p: PrimeModulus,
    ) -> Result<FusionOutcome> {
        row.validate(p)?;
        col.validate(p)?;
        let (cell, env) = self.lookup(kind, row, col)?;
        let (bottom, top, comps) = match kind {
            Kind::Horizontal => {
                let lower = wall_fuse(row.bottom, col.bottom, p);
                let upper = wall_fuse(row.top, col.top, p);
                let range = |m: u32| {
                    if m > 1 {
                        (0..p.get()).collect::<Vec<_>>()
                    } else {
                        vec![0]
                    }
                };
                let comps = range(lower.multiplicity)
                    .into_iter()
                    .flat_map(|mu| {
                        range(upper.multiplicity)
                            .into_iter()
                            .map(move |nu| (mu, nu))
                    })
                    .collect::<Vec<_>>();
                (lower.wall, upper.wall, comps)
            }
            Kind::Vertical => {
                if row.top != col.bottom {
                    return Err(Error::NotComposable(row.to_string(), col.to_string()));
                }
                (row.bottom, col.top, vec![(0, 0)])
            }
        };
        let mut components = Vec::new();
        for (mu, nu) in comps {
            let mut env = env.clone();
            env.insert("mu".into(), mu);
            env.insert("nu".into(), nu);
            let terms = cell
                .outcome
                .expand(&env, p)
                .map_err(|e| Error::Oracle(format!("{kind} | {} | {}: {e}", cell.row, cell.col)))?;
            for d in terms.keys() {
                if (d.bottom, d.top) != (bottom, top) {
                    return Err(Error::Oracle(format!(
                        "{kind} | {} | {}: outcome {d} does not lie on {bottom}/{top}",
                        cell.row, cell.col
                    )));
                }
            }
            components.push(FusionComponent {
                mu,
                nu,
                terms: terms
                    .into_iter()
                    .map(|(defect, multiplicity)| FusionTerm {
                        defect,
                        multiplicity,
                    })
                    .collect(),
            });
        }
        Ok(FusionOutcome {
            mode: match kind {
                Kind::Horizontal => "horizontal",
                Kind::Vertical => "vertical",
            }
            .to_string(),
            left: row.clone(),
            right: col.clone(),
            bottom,
            top,
            components,
        })
    }
}
