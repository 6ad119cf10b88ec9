//! Exact engine for binary interface defects between domain walls of the
//! Kitaev `Z/p` model: classification, horizontal and vertical fusion, and
//! verification against reference fusion tables.

pub mod arith;
pub mod error;
pub mod expr;
pub mod fusion;
pub mod inflation;
pub mod linalg;
pub mod oracle;
pub mod pants;
pub mod skein;
pub mod tubes;
pub mod walls;

pub use error::{Error, Result};
