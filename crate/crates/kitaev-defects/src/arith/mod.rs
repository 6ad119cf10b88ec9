//! Exact arithmetic: residues modulo `p` and the cyclotomic coefficient field.

mod cyclotomic;
mod zp;

pub use cyclotomic::{theta, Cyclotomic};
pub use zp::{zp_inv, PrimeModulus, Zp};
