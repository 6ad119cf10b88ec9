//! Deliberately corrupted inflation rules must be caught by the table
//! comparison.  Each mutation flips one sign, so it only shows up for p > 2.

use kitaev_defects::arith::PrimeModulus;
use kitaev_defects::fusion::{DefectCache, HorizontalEngine};
use kitaev_defects::oracle::{all_defects, verify, FusionTables, Kind};

mod common;

use common::{affected_pairs, mutated_table, MUTATIONS};

#[test]
fn unmutated_rules_pass_on_the_same_pairs() {
    let p = PrimeModulus::new(3).unwrap();
    let cache = DefectCache::new();
    let defects = all_defects(&cache, p).unwrap();
    let engine = HorizontalEngine::default();
    let (_, _, _, l, r) = MUTATIONS[0];
    let report = verify(
        &engine,
        Kind::Horizontal,
        FusionTables::standard(),
        &cache,
        &affected_pairs(&defects, l, r),
        p,
    );
    assert!(report.passed());
}

#[test]
fn every_mutation_is_detected() {
    let p = PrimeModulus::new(3).unwrap();
    let cache = DefectCache::new();
    let defects = all_defects(&cache, p).unwrap();
    for (i, (prefix, from, to, l, r)) in MUTATIONS.into_iter().enumerate() {
        let engine = HorizontalEngine {
            inflations: mutated_table(i),
        };
        let pairs = affected_pairs(&defects, l, r);
        let report = verify(
            &engine,
            Kind::Horizontal,
            FusionTables::standard(),
            &cache,
            &pairs,
            p,
        );
        assert!(
            !report.passed(),
            "mutation `{prefix}`: {from} -> {to} went unnoticed on {} pairs",
            pairs.len()
        );
    }
}
