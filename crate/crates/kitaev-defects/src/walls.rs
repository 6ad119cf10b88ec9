//! Domain walls of the `Z/p` toric code, their simple objects, the bimodule
//! action of `Z/p x Z/p`, the associator twist and the horizontal fusion of
//! walls.
//!
//! A wall is a `Vec(Z/p)`-bimodule category.  `T` has objects `(a, b)` acted
//! on independently from both sides; `L` (resp. `R`) only feels the right
//! (resp. left) action; `F0` has a single object; `X_k` has objects `a`
//! acted on by `g` from the left and `k h` from the right; `F_q` has a single
//! object but a nontrivial middle associator `omega^(q g h)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wall {
    T,
    L,
    R,
    F0,
    X(u32),
    F(u32),
}

/// A simple object of a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WallObject {
    /// Objects of `T`.
    Pair(u32, u32),
    /// Objects of `L`, `R` and `X_k`.
    Single(u32),
    /// The unique object of `F0` and `F_q`.
    Star,
}

/// Outcome of fusing two walls horizontally: `multiplicity * wall`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WallFusion {
    pub multiplicity: u32,
    pub wall: Wall,
}

impl Wall {
    /// Checks that the wall parameter is a unit modulo `p`.
    pub fn validate(self, p: PrimeModulus) -> Result<Self> {
        match self {
            Wall::X(k) | Wall::F(k) if k == 0 || k >= p.get() => Err(Error::InvalidWall(format!(
                "{self} (parameter must lie in 1..{})",
                p.get()
            ))),
            _ => Ok(self),
        }
    }

    /// Middle-associator parameter: `q` for `F_q`, otherwise `0`.
    pub fn twist(self) -> u32 {
        match self {
            Wall::F(q) => q,
            _ => 0,
        }
    }

    /// Exponent of `omega` in the middle associator `Omega(g, h)`.
    pub fn associator(self, g: u32, h: u32, p: PrimeModulus) -> u32 {
        p.mul(self.twist(), p.mul(g, h))
    }

    /// The simple objects of the wall.
    pub fn objects(self, p: PrimeModulus) -> Vec<WallObject> {
        match self {
            Wall::T => p
                .elements()
                .flat_map(|a| p.elements().map(move |b| WallObject::Pair(a, b)))
                .collect(),
            Wall::L | Wall::R | Wall::X(_) => p.elements().map(WallObject::Single).collect(),
            Wall::F0 | Wall::F(_) => vec![WallObject::Star],
        }
    }

    /// Left action by `g` and right action by `h`: `g . obj . h`.
    pub fn act(self, g: u32, obj: WallObject, h: u32, p: PrimeModulus) -> WallObject {
        match (self, obj) {
            (Wall::T, WallObject::Pair(a, b)) => WallObject::Pair(p.add(a, g), p.add(b, h)),
            (Wall::L, WallObject::Single(a)) => WallObject::Single(p.add(a, h)),
            (Wall::R, WallObject::Single(a)) => WallObject::Single(p.add(a, g)),
            (Wall::X(k), WallObject::Single(a)) => {
                WallObject::Single(p.add(a, p.add(g, p.mul(k, h))))
            }
            (Wall::F0 | Wall::F(_), WallObject::Star) => WallObject::Star,
            _ => panic!("object {obj:?} does not belong to wall {self}"),
        }
    }

    /// Whether `obj` is an object of this wall.
    pub fn owns(self, obj: WallObject) -> bool {
        matches!(
            (self, obj),
            (Wall::T, WallObject::Pair(..))
                | (Wall::L | Wall::R | Wall::X(_), WallObject::Single(_))
                | (Wall::F0 | Wall::F(_), WallObject::Star)
        )
    }

    /// Compact name, e.g. `X2`, `F0`, `T`.
    pub fn short_name(self) -> String {
        match self {
            Wall::T => "T".into(),
            Wall::L => "L".into(),
            Wall::R => "R".into(),
            Wall::F0 => "F0".into(),
            Wall::X(k) => format!("X{k}"),
            Wall::F(q) => format!("F{q}"),
        }
    }
}

/// All `4 + 2(p-1)` walls, in the order `T, L, R, F0, X_1.., F_1..`.
pub fn enumerate_walls(p: PrimeModulus) -> Vec<Wall> {
    let mut w = vec![Wall::T, Wall::L, Wall::R, Wall::F0];
    w.extend(p.units().map(Wall::X));
    w.extend(p.units().map(Wall::F));
    w
}

/// Horizontal fusion `a (x) b` of walls (`a` on the left).
pub fn wall_fuse(a: Wall, b: Wall, p: PrimeModulus) -> WallFusion {
    use Wall::*;
    let pm = p.get();
    let one = |wall| WallFusion {
        multiplicity: 1,
        wall,
    };
    let many = |wall| WallFusion {
        multiplicity: pm,
        wall,
    };
    let inv = |x: u32| p.inv(x).expect("wall parameters are units");
    match (a, b) {
        (T, T) => many(T),
        (T, L) => one(T),
        (T, R) => many(R),
        (T, F0) => one(R),
        (T, X(_)) => one(T),
        (T, F(_)) => one(R),
        (L, T) => many(L),
        (L, L) => one(L),
        (L, R) => many(F0),
        (L, F0) => one(F0),
        (L, X(_)) => one(L),
        (L, F(_)) => one(F0),
        (R, T) => one(T),
        (R, L) => many(T),
        (R, R) => one(R),
        (R, F0) => many(R),
        (R, X(_)) => one(R),
        (R, F(_)) => one(T),
        (F0, T) => one(L),
        (F0, L) => many(L),
        (F0, R) => one(F0),
        (F0, F0) => many(F0),
        (F0, X(_)) => one(F0),
        (F0, F(_)) => one(L),
        (X(_), T) => one(T),
        (X(_), L) => one(L),
        (X(_), R) => one(R),
        (X(_), F0) => one(F0),
        (X(k), X(l)) => one(X(p.mul(k, l))),
        (X(k), F(r)) => one(F(p.mul(inv(k), r))),
        (F(_), T) => one(L),
        (F(_), L) => one(T),
        (F(_), R) => one(F0),
        (F(_), F0) => one(R),
        (F(q), X(l)) => one(F(p.mul(q, l))),
        (F(q), F(r)) => one(X(p.mul(inv(q), r))),
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wall::T => write!(f, "T"),
            Wall::L => write!(f, "L"),
            Wall::R => write!(f, "R"),
            Wall::F0 => write!(f, "F0"),
            Wall::X(k) => write!(f, "X:{k}"),
            Wall::F(q) => write!(f, "F:{q}"),
        }
    }
}

impl FromStr for Wall {
    type Err = Error;
    /// Parses `T`, `L`, `R`, `F0`, `X:<k>` or `F:<q>` (the parameter is not
    /// range-checked here; see [`Wall::validate`]).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidWall(s.to_string());
        match s.trim() {
            "T" => Ok(Wall::T),
            "L" => Ok(Wall::L),
            "R" => Ok(Wall::R),
            "F0" => Ok(Wall::F0),
            t => {
                let (kind, param) = t.split_once(':').ok_or_else(bad)?;
                let k: u32 = param.trim().parse().map_err(|_| bad())?;
                match kind.trim() {
                    "X" => Ok(Wall::X(k)),
                    "F" if k == 0 => Ok(Wall::F0),
                    "F" => Ok(Wall::F(k)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for Wall {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Wall {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for WallObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallObject::Pair(a, b) => write!(f, "({a},{b})"),
            WallObject::Single(a) => write!(f, "{a}"),
            WallObject::Star => write!(f, "*"),
        }
    }
}

impl Serialize for WallObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u32) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn wall_count() {
        for p in [2, 3, 5, 7] {
            assert_eq!(enumerate_walls(pm(p)).len(), 4 + 2 * (p as usize - 1));
        }
    }

    #[test]
    fn parse_round_trip() {
        let p = pm(5);
        for w in enumerate_walls(p) {
            assert_eq!(w.to_string().parse::<Wall>().unwrap(), w);
        }
        assert!("Y:1".parse::<Wall>().is_err());
        assert!("X:0".parse::<Wall>().unwrap().validate(p).is_err());
        assert!("X:5".parse::<Wall>().unwrap().validate(p).is_err());
    }

    #[test]
    fn twisted_products() {
        let p = pm(5);
        assert_eq!(wall_fuse(Wall::X(2), Wall::X(3), p).wall, Wall::X(1));
        // X_2 (x) F_1 = F_{2^-1} = F_3.
        assert_eq!(wall_fuse(Wall::X(2), Wall::F(1), p).wall, Wall::F(3));
        // F_2 (x) F_4 = X_{2^-1 4} = X_2.
        assert_eq!(wall_fuse(Wall::F(2), Wall::F(4), p).wall, Wall::X(2));
        assert_eq!(wall_fuse(Wall::T, Wall::T, p).multiplicity, 5);
    }

    #[test]
    fn actions_commute() {
        let p = pm(3);
        for w in enumerate_walls(p) {
            for o in w.objects(p) {
                for (g, h) in [(1, 2), (2, 2), (0, 1)] {
                    let a = w.act(g, w.act(0, o, h, p), 0, p);
                    let b = w.act(0, w.act(g, o, 0, p), h, p);
                    assert_eq!(a, b);
                    assert!(w.owns(a));
                }
            }
        }
    }
}
