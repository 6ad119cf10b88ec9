//! Inflated target idempotents are idempotent in the four-string tube algebra.
//! (The slower p = 3 check runs in the acceptance test.)

use kitaev_defects::arith::PrimeModulus;
use kitaev_defects::inflation::{inflation_failures, InflationTable};

fn check(p: u32) {
    let f = inflation_failures(InflationTable::standard(), PrimeModulus::new(p).unwrap()).unwrap();
    assert!(
        f.is_empty(),
        "{} failures, e.g. {:?}",
        f.len(),
        &f[..f.len().min(20)]
    );
}

#[test]
fn inflations_are_idempotent_p2() {
    check(2);
}
