//! Exact arithmetic in the cyclotomic field `Q(zeta_N)`.
//!
//! `N = p` for odd `p` and `N = 4` for `p = 2`, so the field always contains
//! the `p`-th roots of unity `omega = zeta_N^(N/p)` and, for `p = 2`, the
//! fourth root `i` needed by the quadratic phases `theta`.  Elements are
//! stored as rational coordinates in the power basis `zeta^0 .. zeta^(d-1)`,
//! `d = phi(N)`, reduced modulo the cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::zp::PrimeModulus;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    p: PrimeModulus,
    coeffs: Vec<BigRational>,
}

fn degree(p: PrimeModulus) -> usize {
    if p.get() == 2 {
        2
    } else {
        (p.get() - 1) as usize
    }
}

impl Cyclotomic {
    pub fn zero(p: PrimeModulus) -> Self {
        Cyclotomic {
            p,
            coeffs: vec![BigRational::zero(); degree(p)],
        }
    }

    pub fn one(p: PrimeModulus) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: PrimeModulus, r: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(p: PrimeModulus, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_N^e`.
    pub fn zeta_pow(p: PrimeModulus, e: i64) -> Self {
        let n = p.field_order() as i64;
        let mut g = vec![BigRational::zero(); n as usize];
        g[e.rem_euclid(n) as usize] = BigRational::one();
        Self::from_group_ring(p, &g)
    }

    /// `omega^k` with `omega = exp(2 pi i / p)`.
    pub fn omega_pow(p: PrimeModulus, k: i64) -> Self {
        Self::zeta_pow(p, k * (p.field_order() / p.get()) as i64)
    }

    /// Maps a vector indexed by `Z/N` (the group ring `Q[Z/N]`) onto the
    /// field by `e_j -> zeta^j`.
    pub fn from_group_ring(p: PrimeModulus, g: &[BigRational]) -> Self {
        let n = p.field_order() as usize;
        assert_eq!(g.len(), n, "group-ring vector has wrong length");
        let coeffs = if p.get() == 2 {
            vec![&g[0] - &g[2], &g[1] - &g[3]]
        } else {
            (0..n - 1).map(|j| &g[j] - &g[n - 1]).collect()
        };
        Cyclotomic { p, coeffs }
    }

    /// Same as [`Cyclotomic::from_group_ring`] for integer weights.
    pub fn from_int_group_ring(p: PrimeModulus, g: &[i64]) -> Self {
        let v: Vec<BigRational> = g
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        Self::from_group_ring(p, &v)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn same_modulus(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: o.p.get(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same_modulus(o)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic { p: self.p, coeffs })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.same_modulus(o)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic { p: self.p, coeffs })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same_modulus(o)?;
        let n = self.p.field_order() as usize;
        let mut g = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                g[(i + j) % n] += a * b;
            }
        }
        Ok(Self::from_group_ring(self.p, &g))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplies by `zeta_N^e`.
    pub fn shift(&self, e: i64) -> Self {
        let n = self.p.field_order() as i64;
        let mut g = vec![BigRational::zero(); n as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            g[(i as i64 + e).rem_euclid(n) as usize] += a;
        }
        Self::from_group_ring(self.p, &g)
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        let n = self.p.field_order() as usize;
        let mut g = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            g[(n - i) % n] += a;
        }
        Self::from_group_ring(self.p, &g)
    }

    /// Multiplicative inverse, by solving `self * x = 1` in the power basis.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.coeffs.len();
        // Column j holds the coordinates of self * zeta^j.
        let cols: Vec<Cyclotomic> = (0..d).map(|j| self.shift(j as i64)).collect();
        let mut m: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            m.swap(col, piv);
            let inv = BigRational::one() / &m[col][col];
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                        *x -= y * &f;
                    }
                }
            }
        }
        Ok(Cyclotomic {
            p: self.p,
            coeffs: m.into_iter().map(|row| row[d].clone()).collect(),
        })
    }

    /// Inverse of [`Cyclotomic::triples`]; powers index the basis
    /// `zeta^0 .. zeta^(d-1)`.
    pub fn from_triples(p: PrimeModulus, triples: &[(u32, i64, i64)]) -> Result<Self> {
        let mut z = Self::zero(p);
        for &(pow, n, d) in triples {
            let bad = |reason: &str| Error::InvalidExpression {
                text: format!("[{pow}, {n}, {d}]"),
                reason: reason.into(),
            };
            if pow as usize >= z.coeffs.len() {
                return Err(bad("power exceeds the field degree"));
            }
            if d == 0 {
                return Err(bad("zero denominator"));
            }
            z.coeffs[pow as usize] += BigRational::new(n.into(), d.into());
        }
        Ok(z)
    }

    /// `(power, numerator, denominator)` triples of the nonzero coordinates.
    pub fn triples(&self) -> Vec<(u32, BigInt, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c.numer().clone(), c.denom().clone()))
            .collect()
    }
}

/// `theta_{x,a}(g)`: `(-1)^(g x) i^(a g)` for `p = 2`, and
/// `omega^(g x + a g^2 / 2)` for odd `p`.
///
/// `a` is an integer, not a residue: for `p = 2` the value depends on
/// `a mod 4`, so e.g. `a = -1` and `a = 1` give different characters.
pub fn theta(x: u32, a: i64, g: u32, p: PrimeModulus) -> Cyclotomic {
    if p.get() == 2 {
        let (x, a, g) = ((x % 2) as i64, a.rem_euclid(4), (g % 2) as i64);
        Cyclotomic::zeta_pow(p, 2 * g * x + a * g)
    } else {
        let half = p.inv(2).expect("2 is a unit for odd p");
        let e = p.add(p.mul(g, x), p.mul(p.reduce(a), p.mul(p.mul(g, g), half)));
        Cyclotomic::omega_pow(p, e as i64)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            /// Panics if the operands live over different moduli.
            fn $method(self, o: &Cyclotomic) -> Cyclotomic {
                self.$inner(o).expect("cyclotomic modulus mismatch")
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, o: Cyclotomic) -> Cyclotomic {
                (&self).$method(&o)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{a}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    /// Serialises as a list of `[power, numerator, denominator]` triples.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let t = self.triples();
        let mut seq = s.serialize_seq(Some(t.len()))?;
        for (pow, n, d) in t {
            let n = n
                .to_i64()
                .ok_or_else(|| serde::ser::Error::custom("numerator overflow"))?;
            let d = d
                .to_i64()
                .ok_or_else(|| serde::ser::Error::custom("denominator overflow"))?;
            seq.serialize_element(&(pow, n, d))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u32) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn triples_round_trip() {
        for p in [pm(2), pm(3), pm(5)] {
            let z = &(&Cyclotomic::zeta_pow(p, 1) * &Cyclotomic::from_int(p, 3))
                + &Cyclotomic::omega_pow(p, -1).scale(&BigRational::new(1.into(), 7.into()));
            let t: Vec<(u32, i64, i64)> = z
                .triples()
                .into_iter()
                .map(|(i, n, d)| (i, n.to_i64().unwrap(), d.to_i64().unwrap()))
                .collect();
            assert_eq!(Cyclotomic::from_triples(p, &t).unwrap(), z);
        }
        assert!(Cyclotomic::from_triples(pm(3), &[(2, 1, 1)]).is_err());
        assert!(Cyclotomic::from_triples(pm(3), &[(0, 1, 0)]).is_err());
    }

    #[test]
    fn omega_has_order_p() {
        for p in [2, 3, 5, 7] {
            let p = pm(p);
            let w = Cyclotomic::omega_pow(p, 1);
            let mut acc = Cyclotomic::one(p);
            for k in 1..=p.get() {
                acc = &acc * &w;
                assert_eq!(acc.is_one(), k == p.get());
            }
        }
    }

    #[test]
    fn sum_of_roots_vanishes() {
        let p = pm(5);
        let s = (0..5).fold(Cyclotomic::zero(p), |a, k| a + Cyclotomic::omega_pow(p, k));
        assert!(s.is_zero());
    }

    #[test]
    fn theta_examples() {
        // p = 2: theta_{1,1}(1) = -i.
        let p = pm(2);
        assert_eq!(theta(1, 1, 1, p), Cyclotomic::zeta_pow(p, 3));
        assert_eq!(theta(0, -1, 1, p), Cyclotomic::zeta_pow(p, 3));
        assert_eq!(theta(0, 1, 1, p), Cyclotomic::zeta_pow(p, 1));
        // p = 3: theta_{0,1}(2) = omega^2.
        let p = pm(3);
        assert_eq!(theta(0, 1, 2, p), Cyclotomic::omega_pow(p, 2));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = Cyclotomic::one(pm(3));
        let b = Cyclotomic::one(pm(5));
        assert_eq!(
            a.try_add(&b),
            Err(Error::ModulusMismatch { left: 3, right: 5 })
        );
    }

    #[test]
    fn inverse_and_conjugate() {
        let p = pm(5);
        let a = Cyclotomic::omega_pow(p, 1) + Cyclotomic::from_int(p, 2);
        let b = a.inverse().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(
            Cyclotomic::omega_pow(p, 2).conj(),
            Cyclotomic::omega_pow(p, 3)
        );
        assert_eq!(Cyclotomic::zero(p).inverse(), Err(Error::DivisionByZero));
    }
}
