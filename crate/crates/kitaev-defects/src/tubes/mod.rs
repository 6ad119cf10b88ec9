//! The two-string tube algebra of a pair of walls, its idempotents, and the
//! classification of binary interface defects.
//!
//! A basis tube `Tube2 { bottom, top, g, h }` is an annulus whose inner
//! circle carries the objects `bottom` (on the lower wall) and `top` (on the
//! upper wall), crossed by a left string `g` and a right string `h`.  The
//! outer circle carries `g . bottom . h` and `g . top . h`.  Read upwards,
//! the lower wall sees the attachments `[R(-h), L(-g)]` and the upper wall
//! sees `[L(g), R(h)]`; stacking tubes concatenates these words and the
//! skein phase of the concatenation is the structure constant.

mod catalog;
mod classify;

pub use catalog::{catalog_entry, family_arity, CatalogEntry};
pub use classify::{
    block_structure, classify_defects, corner_dimension, defect_equivalent, BlockStructure,
    ClassifiedDefect,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Cyclotomic, PrimeModulus};
use crate::error::{Error, Result};
use crate::skein::{word_phase, L, R};
use crate::walls::{Wall, WallObject};

/// A binary interface defect: a wall pair plus the labels that distinguish
/// the simple defects between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Defect {
    pub bottom: Wall,
    pub top: Wall,
    pub labels: Vec<u32>,
}

impl Defect {
    pub fn new(bottom: Wall, top: Wall, labels: Vec<u32>) -> Self {
        Defect {
            bottom,
            top,
            labels,
        }
    }

    /// Checks walls and labels against `p` and the family's label count.
    pub fn validate(&self, p: PrimeModulus) -> Result<()> {
        self.bottom.validate(p)?;
        self.top.validate(p)?;
        if self.labels.len() != family_arity(self.bottom, self.top)
            || self.labels.iter().any(|&l| l >= p.get())
        {
            return Err(Error::InvalidDefect(format!("{self} at p = {p}")));
        }
        Ok(())
    }

    /// Compact name such as `X1F2(0)` or `TT(1,0)`.
    pub fn short_name(&self) -> String {
        let mut s = format!("{}{}", self.bottom.short_name(), self.top.short_name());
        if !self.labels.is_empty() {
            let l: Vec<String> = self.labels.iter().map(u32::to_string).collect();
            s.push_str(&format!("({})", l.join(",")));
        }
        s
    }
}

impl fmt::Display for Defect {
    /// `WALL/WALL[:l1[,l2]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.bottom, self.top)?;
        if !self.labels.is_empty() {
            let l: Vec<String> = self.labels.iter().map(u32::to_string).collect();
            write!(f, ":{}", l.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Defect {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDefect(s.to_string());
        let (b, rest) = s.trim().split_once('/').ok_or_else(bad)?;
        let bottom: Wall = b.parse().map_err(|_| bad())?;
        // A parametrised top wall `X:k` / `F:q` consumes the first colon.
        let (top_text, labels_text) =
            if (rest.starts_with("X:") || rest.starts_with("F:")) && rest.len() > 2 {
                match rest[2..].split_once(':') {
                    Some((param, labels)) => (format!("{}{}", &rest[..2], param), Some(labels)),
                    None => (rest.to_string(), None),
                }
            } else {
                match rest.split_once(':') {
                    Some((w, labels)) => (w.to_string(), Some(labels)),
                    None => (rest.to_string(), None),
                }
            };
        let top: Wall = top_text.parse().map_err(|_| bad())?;
        let labels = match labels_text {
            None => vec![],
            Some(t) => t
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?,
        };
        Ok(Defect {
            bottom,
            top,
            labels,
        })
    }
}

impl Serialize for Defect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Defect {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A basis element of the two-string tube algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tube2 {
    pub bottom: WallObject,
    pub top: WallObject,
    pub g: u32,
    pub h: u32,
}

impl Tube2 {
    /// Objects on the outer circle.
    pub fn outer(&self, walls: (Wall, Wall), p: PrimeModulus) -> (WallObject, WallObject) {
        (
            walls.0.act(self.g, self.bottom, self.h, p),
            walls.1.act(self.g, self.top, self.h, p),
        )
    }

    /// Whether the inner and outer objects agree.
    pub fn is_endomorphism(&self, walls: (Wall, Wall), p: PrimeModulus) -> bool {
        self.outer(walls, p) == (self.bottom, self.top)
    }
}

/// Structure constant of `outer o inner` as an exponent of `omega`, where the
/// inner tube has strings `(g0, h0)` and the outer one `(g1, h1)`.
pub fn tube2_phase(
    walls: (Wall, Wall),
    outer: (u32, u32),
    inner: (u32, u32),
    p: PrimeModulus,
) -> u32 {
    let (g1, h1) = outer;
    let (g0, h0) = inner;
    let (qb, qt) = (walls.0.twist(), walls.1.twist());
    let n = |x| p.neg(x);
    let bottom = word_phase(qb, &[R(n(h1)), L(n(g1)), R(n(h0)), L(n(g0))], p);
    let bottom_std = word_phase(qb, &[R(n(p.add(h0, h1))), L(n(p.add(g0, g1)))], p);
    let top = word_phase(qt, &[L(g0), R(h0), L(g1), R(h1)], p);
    p.add(p.sub(bottom, bottom_std), top)
}

/// A linear combination of two-string tubes over a fixed wall pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeElement2 {
    pub walls: (Wall, Wall),
    pub p: PrimeModulus,
    pub terms: BTreeMap<Tube2, Cyclotomic>,
}

impl TubeElement2 {
    pub fn zero(walls: (Wall, Wall), p: PrimeModulus) -> Self {
        TubeElement2 {
            walls,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, t: Tube2, c: Cyclotomic) {
        let e = self
            .terms
            .entry(t)
            .or_insert_with(|| Cyclotomic::zero(c.modulus()));
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self o inner`: `inner` is applied first (sits inside).
    pub fn compose(&self, inner: &TubeElement2) -> TubeElement2 {
        assert_eq!(
            self.walls, inner.walls,
            "tube elements over different walls"
        );
        let p = self.p;
        let mut out = TubeElement2::zero(self.walls, p);
        for (ti, ci) in &inner.terms {
            let outer_objs = ti.outer(self.walls, p);
            for (to, co) in &self.terms {
                if (to.bottom, to.top) != outer_objs {
                    continue;
                }
                let e = tube2_phase(self.walls, (to.g, to.h), (ti.g, ti.h), p);
                let t = Tube2 {
                    bottom: ti.bottom,
                    top: ti.top,
                    g: p.add(ti.g, to.g),
                    h: p.add(ti.h, to.h),
                };
                out.add_term(
                    t,
                    (ci * co).shift(e as i64 * (p.field_order() / p.get()) as i64),
                );
            }
        }
        out
    }

    /// Inner object pairs that occur in the element.
    pub fn object_pairs(&self) -> Vec<(WallObject, WallObject)> {
        let mut v: Vec<_> = self.terms.keys().map(|t| (t.bottom, t.top)).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defect_grammar() {
        for s in [
            "T/T:1,2",
            "X:2/F:3:4",
            "F:1/F:1:0,2",
            "L/R",
            "F0/X:1:0",
            "X:1/X:2",
        ] {
            let d: Defect = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        let d: Defect = "X:2/F:3:4".parse().unwrap();
        assert_eq!(d, Defect::new(Wall::X(2), Wall::F(3), vec![4]));
        assert!("X:2".parse::<Defect>().is_err());
        assert!("T/T:a".parse::<Defect>().is_err());
    }

    #[test]
    fn closed_form_structure_constant() {
        let p = PrimeModulus::new(5).unwrap();
        for (b, t) in [
            (Wall::X(2), Wall::F(3)),
            (Wall::F(1), Wall::F(4)),
            (Wall::F(2), Wall::T),
        ] {
            for (g1, h1, g0, h0) in [(1, 2, 3, 4), (4, 4, 1, 2), (0, 3, 2, 0)] {
                let q = p.sub(b.twist(), t.twist());
                let expected = p.mul(q, p.mul(g1, h0));
                assert_eq!(tube2_phase((b, t), (g1, h1), (g0, h0), p), expected);
            }
        }
    }
}
