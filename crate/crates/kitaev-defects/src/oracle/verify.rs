//! Sweeps that compare computed fusions with the reference tables.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fpdim::check_fp_consistency;
use super::tables::{FusionTables, Kind};
use crate::arith::PrimeModulus;
use crate::error::{Error, Result};
use crate::fusion::{DefectCache, FusionEngine, FusionOutcome, FusionTerm};
use crate::tubes::Defect;
use crate::walls::enumerate_walls;

/// How many defect pairs to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scope {
    Full,
    /// A deterministic pseudo-random sample of this many pairs.
    Sample(usize),
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scope> {
        if s == "full" {
            return Ok(Scope::Full);
        }
        s.strip_prefix("sample:")
            .and_then(|n| n.parse().ok())
            .map(Scope::Sample)
            .ok_or_else(|| Error::InvalidExpression {
                text: s.into(),
                reason: "expected `full` or `sample:N`".into(),
            })
    }
}

/// One disagreement between engine and table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub kind: Kind,
    pub left: Defect,
    pub right: Defect,
    /// `(mu, nu)`, or `None` if the whole pair failed.
    pub component: Option<(u32, u32)>,
    pub computed: Vec<FusionTerm>,
    pub expected: Vec<FusionTerm>,
    pub note: String,
}

/// Result of a verification sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub p: u32,
    pub kind: Kind,
    pub pairs_checked: usize,
    pub components_checked: usize,
    pub mismatches: Vec<Mismatch>,
    /// Horizontal fusions violating `d(a) d(b) = sum N d(c)`.
    pub fp_violations: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.fp_violations.is_empty()
    }
}

/// Every simple defect over every wall pair, in a stable order.
pub fn all_defects(cache: &DefectCache, p: PrimeModulus) -> Result<Vec<Defect>> {
    let walls = enumerate_walls(p);
    let mut out = Vec::new();
    for &b in &walls {
        for &t in &walls {
            out.extend(cache.defects(b, t, p)?.iter().map(|c| c.defect.clone()));
        }
    }
    Ok(out)
}

/// All ordered pairs a sweep ranges over (vertical pairs must compose).
pub fn sweep_pairs(kind: Kind, defects: &[Defect]) -> Vec<(Defect, Defect)> {
    let mut out = Vec::new();
    for a in defects {
        for b in defects {
            if kind == Kind::Horizontal || a.top == b.bottom {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Pairs selected by `scope`, deterministically from `seed`.
pub fn select_pairs(
    kind: Kind,
    defects: &[Defect],
    scope: Scope,
    seed: u64,
) -> Vec<(Defect, Defect)> {
    let all = sweep_pairs(kind, defects);
    match scope {
        Scope::Full => all,
        Scope::Sample(n) if n >= all.len() => all,
        Scope::Sample(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked: Vec<_> = all.choose_multiple(&mut rng, n).cloned().collect();
            picked.sort();
            picked
        }
    }
}

fn as_map(terms: &[FusionTerm]) -> BTreeMap<&Defect, u32> {
    terms.iter().map(|t| (&t.defect, t.multiplicity)).collect()
}

/// Compares one computed outcome with its expected counterpart.
pub fn compare(kind: Kind, computed: &FusionOutcome, expected: &FusionOutcome) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let keys = |o: &FusionOutcome| {
        o.components
            .iter()
            .map(|c| (c.mu, c.nu))
            .collect::<Vec<_>>()
    };
    if keys(computed) != keys(expected) {
        out.push(Mismatch {
            kind,
            left: computed.left.clone(),
            right: computed.right.clone(),
            component: None,
            computed: Vec::new(),
            expected: Vec::new(),
            note: "component sets differ".into(),
        });
        return out;
    }
    for (c, e) in computed.components.iter().zip(&expected.components) {
        if as_map(&c.terms) != as_map(&e.terms) {
            out.push(Mismatch {
                kind,
                left: computed.left.clone(),
                right: computed.right.clone(),
                component: Some((c.mu, c.nu)),
                computed: c.terms.clone(),
                expected: e.terms.clone(),
                note: String::new(),
            });
        }
    }
    out
}

/// Checks one pair: components compared, mismatches, FP violations.
fn check_pair(
    engine: &dyn FusionEngine,
    kind: Kind,
    tables: &FusionTables,
    cache: &DefectCache,
    a: &Defect,
    b: &Defect,
    p: PrimeModulus,
) -> (usize, Vec<Mismatch>, Option<String>) {
    let fail = |note: String| Mismatch {
        kind,
        left: a.clone(),
        right: b.clone(),
        component: None,
        computed: Vec::new(),
        expected: Vec::new(),
        note,
    };
    let computed = match engine.fuse(cache, a, b, p) {
        Ok(o) => o,
        Err(e) => return (0, vec![fail(format!("engine: {e}"))], None),
    };
    let expected = match tables.expected(kind, a, b, p) {
        Ok(o) => o,
        Err(e) => return (0, vec![fail(format!("table: {e}"))], None),
    };
    let fp = match kind {
        Kind::Horizontal => check_fp_consistency(&computed, p).err().map(|(lhs, rhs)| {
            let rhs = rhs.map_or("not of the form q*sqrt(p)^e".to_string(), |r| r.to_string());
            format!("{a} x {b}: {lhs} != {rhs}")
        }),
        Kind::Vertical => None,
    };
    (
        computed.components.len(),
        compare(kind, &computed, &expected),
        fp,
    )
}

/// Fuses every selected pair and diffs against the tables.  Pairs are
/// processed in parallel; the report lists findings in pair order.
pub fn verify(
    engine: &dyn FusionEngine,
    kind: Kind,
    tables: &FusionTables,
    cache: &DefectCache,
    pairs: &[(Defect, Defect)],
    p: PrimeModulus,
) -> VerifyReport {
    let results: Vec<_> = pairs
        .par_iter()
        .map(|(a, b)| check_pair(engine, kind, tables, cache, a, b, p))
        .collect();
    let mut report = VerifyReport {
        p: p.get(),
        kind,
        pairs_checked: pairs.len(),
        components_checked: 0,
        mismatches: Vec::new(),
        fp_violations: Vec::new(),
    };
    for (components, mismatches, fp) in results {
        report.components_checked += components;
        report.mismatches.extend(mismatches);
        report.fp_violations.extend(fp);
    }
    report
}
