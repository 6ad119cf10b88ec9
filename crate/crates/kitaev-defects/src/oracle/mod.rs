//! Reference data and verification: symbolic fusion tables, Frobenius–Perron
//! dimensions and sweeps comparing the engines against both.

pub mod fpdim;
pub mod tables;
pub mod verify;

pub use fpdim::{check_fp_consistency, fpdim, FpDim};
pub use tables::{FusionTables, Kind};
pub use verify::{
    all_defects, compare, select_pairs, sweep_pairs, verify, Mismatch, Scope, VerifyReport,
};
