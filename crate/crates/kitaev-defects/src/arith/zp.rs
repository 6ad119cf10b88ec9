//! Residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated prime modulus `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    /// Validates `p` by trial division.
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u32;
        while (d as u64) * (d as u64) <= p as u64 {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Order `N` of the root of unity generating the coefficient field:
    /// `p` for odd `p`, `4` for `p = 2`.
    pub fn field_order(self) -> u32 {
        if self.0 == 2 {
            4
        } else {
            self.0
        }
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - (b % self.0) as u64) % self.0 as u64) as u32
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a % self.0) % self.0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2).
        Some(self.pow(a, self.0 - 2))
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All residues `0..p`.
    pub fn elements(self) -> std::ops::Range<u32> {
        0..self.0
    }

    /// All units `1..p`.
    pub fn units(self) -> std::ops::Range<u32> {
        1..self.0
    }
}

impl TryFrom<u32> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u32 {
    fn from(p: PrimeModulus) -> u32 {
        p.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Inverse of `a` modulo `p`.
pub fn zp_inv(a: u32, p: PrimeModulus) -> Result<u32> {
    p.inv(a).ok_or(Error::NotInvertible {
        value: a,
        p: p.get(),
    })
}

/// An element of `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zp {
    value: u32,
    p: PrimeModulus,
}

impl Zp {
    pub fn new(value: i64, p: PrimeModulus) -> Self {
        Zp {
            value: p.reduce(value),
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.p
    }

    pub fn inv(self) -> Result<Zp> {
        Ok(Zp {
            value: zp_inv(self.value, self.p)?,
            p: self.p,
        })
    }

    fn check(self, other: Zp) {
        assert_eq!(self.p, other.p, "mixed moduli in Z/p arithmetic");
    }
}

impl Add for Zp {
    type Output = Zp;
    fn add(self, o: Zp) -> Zp {
        self.check(o);
        Zp {
            value: self.p.add(self.value, o.value),
            p: self.p,
        }
    }
}

impl Sub for Zp {
    type Output = Zp;
    fn sub(self, o: Zp) -> Zp {
        self.check(o);
        Zp {
            value: self.p.sub(self.value, o.value),
            p: self.p,
        }
    }
}

impl Mul for Zp {
    type Output = Zp;
    fn mul(self, o: Zp) -> Zp {
        self.check(o);
        Zp {
            value: self.p.mul(self.value, o.value),
            p: self.p,
        }
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        Zp {
            value: self.p.neg(self.value),
            p: self.p,
        }
    }
}

impl fmt::Display for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(PrimeModulus::new(p).is_ok());
        }
        for n in [0, 1, 4, 6, 9, 15, 25] {
            assert!(PrimeModulus::new(n).is_err());
        }
    }

    #[test]
    fn inverse_of_three_mod_five() {
        let p = PrimeModulus::new(5).unwrap();
        assert_eq!(zp_inv(3, p).unwrap(), 2);
        assert!(zp_inv(0, p).is_err());
    }

    #[test]
    fn field_arithmetic() {
        let p = PrimeModulus::new(7).unwrap();
        let a = Zp::new(-3, p);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((a - a).value(), 0);
        assert_eq!((-a + a).value(), 0);
    }
}
