//! The reference tables cover every pair exactly once and are internally
//! consistent with Frobenius–Perron dimensions.

use kitaev_defects::arith::PrimeModulus;
use kitaev_defects::fusion::DefectCache;
use kitaev_defects::oracle::{all_defects, check_fp_consistency, sweep_pairs, FusionTables, Kind};

#[test]
fn every_pair_matches_exactly_one_cell() {
    let tables = FusionTables::standard();
    for p in [2, 3] {
        let p = PrimeModulus::new(p).unwrap();
        let cache = DefectCache::new();
        let defects = all_defects(&cache, p).unwrap();
        for kind in [Kind::Horizontal, Kind::Vertical] {
            for (a, b) in sweep_pairs(kind, &defects) {
                tables
                    .lookup(kind, &a, &b)
                    .unwrap_or_else(|e| panic!("{kind} {a} {b}: {e}"));
                tables
                    .expected(kind, &a, &b, p)
                    .unwrap_or_else(|e| panic!("{kind} {a} {b}: {e}"));
            }
        }
    }
}

#[test]
fn reference_horizontal_fusions_are_fp_consistent() {
    let tables = FusionTables::standard();
    for p in [2, 3] {
        let p = PrimeModulus::new(p).unwrap();
        let cache = DefectCache::new();
        let defects = all_defects(&cache, p).unwrap();
        for (a, b) in sweep_pairs(Kind::Horizontal, &defects) {
            let o = tables.expected(Kind::Horizontal, &a, &b, p).unwrap();
            assert!(check_fp_consistency(&o, p).is_ok(), "{a} x {b}");
        }
    }
}

#[test]
fn errata_are_applied() {
    let tables = FusionTables::standard();
    assert!(tables.cells.iter().any(|c| c.corrected));
}
