//! Four-string tubes and the inflation of two-string idempotents.
//!
//! Horizontal fusion places two defects side by side: the lower walls `M`
//! (left) and `N` (right) fuse to `M (x) N`, the upper walls `P` and `Q` to
//! `P (x) Q`.  A four-string tube over `(M, N, P, Q)` has inner objects
//! `(m, n, p, q)` and strings `s1` (left), `s2` (top middle), `s3` (right),
//! `s4` (bottom middle).  Read along each wall (from the outer circle to the
//! inner one for `M`, `N`, from the inner to the outer for `P`, `Q`):
//!
//! ```text
//! M: [R(-s4), L(-s1)]   N: [L(s4), R(-s3)]   P: [L(s1), R(-s2)]   Q: [L(s2), R(s3)]
//! ```
//!
//! Inflation rewrites each vertex of a two-string tube over the fused walls
//! according to a table of rules stored in `data/inflations.txt`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{Cyclotomic, PrimeModulus};
use crate::error::{Error, Result};
use crate::expr::{Env, Expr};
use crate::skein::{word_phase, Attach, L, R};
use crate::tubes::TubeElement2;
use crate::walls::{wall_fuse, Wall, WallObject};

/// Walls of a four-string tube: lower-left, lower-right, upper-left, upper-right.
pub type Walls4 = [Wall; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tube4 {
    /// Inner objects on `M, N, P, Q`.
    pub objects: [WallObject; 4],
    /// Strings `s1, s2, s3, s4`.
    pub strings: [u32; 4],
}

impl Tube4 {
    pub fn outer(&self, walls: &Walls4, p: PrimeModulus) -> [WallObject; 4] {
        let [s1, s2, s3, s4] = self.strings;
        let [m, n, pp, q] = self.objects;
        [
            walls[0].act(s1, m, s4, p),
            walls[1].act(p.neg(s4), n, s3, p),
            walls[2].act(s1, pp, p.neg(s2), p),
            walls[3].act(s2, q, s3, p),
        ]
    }
}

/// The four wall words of a four-string tube with strings `s`.
pub fn tube4_words(s: [u32; 4], p: PrimeModulus) -> [[Attach; 2]; 4] {
    let [s1, s2, s3, s4] = s;
    let n = |x| p.neg(x);
    [
        [R(n(s4)), L(n(s1))],
        [L(s4), R(n(s3))],
        [L(s1), R(n(s2))],
        [L(s2), R(s3)],
    ]
}

/// Structure constant of `outer o inner`, as an exponent of `omega`.
pub fn tube4_phase(walls: &Walls4, outer: [u32; 4], inner: [u32; 4], p: PrimeModulus) -> u32 {
    let wo = tube4_words(outer, p);
    let wi = tube4_words(inner, p);
    let sum: [u32; 4] = std::array::from_fn(|i| p.add(outer[i], inner[i]));
    let ws = tube4_words(sum, p);
    let mut e = 0;
    for i in 0..4 {
        // Lower walls read outer-to-inner, upper walls inner-to-outer.
        let word: Vec<Attach> = if i < 2 {
            wo[i].iter().chain(&wi[i]).copied().collect()
        } else {
            wi[i].iter().chain(&wo[i]).copied().collect()
        };
        let q = walls[i].twist();
        e = p.add(e, p.sub(word_phase(q, &word, p), word_phase(q, &ws[i], p)));
    }
    e
}

/// A linear combination of four-string tubes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeElement4 {
    pub walls: Walls4,
    pub p: PrimeModulus,
    pub terms: BTreeMap<Tube4, Cyclotomic>,
}

impl TubeElement4 {
    pub fn zero(walls: Walls4, p: PrimeModulus) -> Self {
        TubeElement4 {
            walls,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, t: Tube4, c: Cyclotomic) {
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

    /// `self o inner`.
    pub fn compose(&self, inner: &TubeElement4) -> TubeElement4 {
        let p = self.p;
        let scale = (p.field_order() / p.get()) as i64;
        let mut by_objects: BTreeMap<[WallObject; 4], Vec<(&Tube4, &Cyclotomic)>> = BTreeMap::new();
        for (t, c) in &self.terms {
            by_objects.entry(t.objects).or_default().push((t, c));
        }
        let mut out = TubeElement4::zero(self.walls, p);
        for (ti, ci) in &inner.terms {
            let Some(outers) = by_objects.get(&ti.outer(&self.walls, p)) else {
                continue;
            };
            for (to, co) in outers {
                let e = tube4_phase(&self.walls, to.strings, ti.strings, p);
                let strings = std::array::from_fn(|i| p.add(ti.strings[i], to.strings[i]));
                out.add_term(
                    Tube4 {
                        objects: ti.objects,
                        strings,
                    },
                    (ci * *co).shift(e as i64 * scale),
                );
            }
        }
        out
    }
}

/// Wall kind without its parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallKind {
    T,
    L,
    R,
    F0,
    X,
    F,
}

impl WallKind {
    pub fn of(w: Wall) -> WallKind {
        match w {
            Wall::T => WallKind::T,
            Wall::L => WallKind::L,
            Wall::R => WallKind::R,
            Wall::F0 => WallKind::F0,
            Wall::X(_) => WallKind::X,
            Wall::F(_) => WallKind::F,
        }
    }

    fn parse(s: &str) -> Result<WallKind> {
        Ok(match s.trim() {
            "T" => WallKind::T,
            "L" => WallKind::L,
            "R" => WallKind::R,
            "F0" => WallKind::F0,
            "X" => WallKind::X,
            "F" => WallKind::F,
            other => return Err(Error::Oracle(format!("unknown wall kind `{other}`"))),
        })
    }
}

/// Object pattern on a factor wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectPattern {
    Pair(Expr, Expr),
    Single(Expr),
    Star,
}

impl ObjectPattern {
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "*" {
            return Ok(ObjectPattern::Star);
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            if let Some((a, b)) = inner.split_once(',') {
                return Ok(ObjectPattern::Pair(Expr::parse(a)?, Expr::parse(b)?));
            }
        }
        Ok(ObjectPattern::Single(Expr::parse(s)?))
    }

    fn eval(&self, env: &Env, p: PrimeModulus) -> Result<WallObject> {
        Ok(match self {
            ObjectPattern::Pair(a, b) => WallObject::Pair(a.eval(env, p)?, b.eval(env, p)?),
            ObjectPattern::Single(a) => WallObject::Single(a.eval(env, p)?),
            ObjectPattern::Star => WallObject::Star,
        })
    }
}

/// Coefficient of an inflation rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    One,
    /// `omega^E`.
    Omega(Expr),
    /// `p^-1 sum_j omega^E`.
    AvgOmega(Expr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    /// Lower wall; the middle string is `s4`.
    A,
    /// Upper wall; the middle string is `s2`.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflationRule {
    pub target: WallKind,
    pub left: WallKind,
    pub right: WallKind,
    pub vertex: Vertex,
    pub weight: Weight,
    pub left_object: ObjectPattern,
    pub middle: Expr,
    pub right_object: ObjectPattern,
}

/// One expanded term of a vertex rule.
#[derive(Clone, Debug)]
pub struct VertexTerm {
    pub weight: Cyclotomic,
    pub left_object: WallObject,
    pub middle: u32,
    pub right_object: WallObject,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflationTable {
    pub rules: Vec<InflationRule>,
}

/// Text of the built-in rule set.
pub const STANDARD_RULES: &str = include_str!("../data/inflations.txt");

impl InflationTable {
    /// Parses the rule file format (see `data/inflations.txt`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| Error::Oracle(format!("inflation rule line {}: {what}", no + 1));
            let cols: Vec<&str> = line.split('|').map(str::trim).collect();
            if cols.len() != 8 {
                return Err(bad("expected 8 columns"));
            }
            let (l, r) = cols[1]
                .split_once('*')
                .ok_or_else(|| bad("factors must read `A * B`"))?;
            let vertex = match cols[2] {
                "a" => Vertex::A,
                "b" => Vertex::B,
                _ => return Err(bad("vertex must be `a` or `b`")),
            };
            let weight = if cols[3] == "1" {
                Weight::One
            } else if let Some(e) = cols[3]
                .strip_prefix("avg_j omega(")
                .and_then(|x| x.strip_suffix(')'))
            {
                Weight::AvgOmega(Expr::parse(e)?)
            } else if let Some(e) = cols[3]
                .strip_prefix("omega(")
                .and_then(|x| x.strip_suffix(')'))
            {
                Weight::Omega(Expr::parse(e)?)
            } else {
                return Err(bad("unrecognised weight"));
            };
            rules.push(InflationRule {
                target: WallKind::parse(cols[0])?,
                left: WallKind::parse(l)?,
                right: WallKind::parse(r)?,
                vertex,
                weight,
                left_object: ObjectPattern::parse(cols[4])?,
                middle: Expr::parse(cols[5])?,
                right_object: ObjectPattern::parse(cols[6])?,
            });
        }
        Ok(InflationTable { rules })
    }

    /// The built-in rule set.
    pub fn standard() -> &'static InflationTable {
        static TABLE: OnceLock<InflationTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            InflationTable::parse(STANDARD_RULES).expect("built-in inflation rules parse")
        })
    }

    pub fn rule(&self, left: Wall, right: Wall, vertex: Vertex) -> Result<&InflationRule> {
        let (l, r) = (WallKind::of(left), WallKind::of(right));
        self.rules
            .iter()
            .find(|x| x.left == l && x.right == r && x.vertex == vertex)
            .ok_or_else(|| Error::Internal(format!("no inflation rule for {left} (x) {right}")))
    }

    /// Expands one vertex: the object `obj` of the fused wall, crossed by
    /// strings `g`, `h`, in tensor component `component`.
    #[allow(clippy::too_many_arguments)]
    pub fn expand_vertex(
        &self,
        left: Wall,
        right: Wall,
        vertex: Vertex,
        obj: WallObject,
        g: u32,
        h: u32,
        component: u32,
        p: PrimeModulus,
    ) -> Result<Vec<VertexTerm>> {
        let rule = self.rule(left, right, vertex)?;
        let fused = wall_fuse(left, right, p).wall;
        let mut env = Env::new();
        match obj {
            WallObject::Pair(a, b) => {
                env.insert("a".into(), a);
                env.insert("b".into(), b);
            }
            WallObject::Single(a) => {
                env.insert("a".into(), a);
            }
            WallObject::Star => {}
        }
        env.insert("g".into(), g);
        env.insert("h".into(), h);
        env.insert(
            if vertex == Vertex::A { "mu" } else { "nu" }.into(),
            component,
        );
        for (names, w) in [(["k", "q"], left), (["l", "r"], right), (["m", "n"], fused)] {
            if let Wall::X(x) | Wall::F(x) = w {
                for n in names {
                    env.insert(n.into(), x);
                }
            }
        }
        let scale = (p.field_order() / p.get()) as i64;
        let mut out = Vec::new();
        let mut push = |env: &Env, weight: Cyclotomic| -> Result<()> {
            out.push(VertexTerm {
                weight,
                left_object: rule.left_object.eval(env, p)?,
                middle: rule.middle.eval(env, p)?,
                right_object: rule.right_object.eval(env, p)?,
            });
            Ok(())
        };
        match &rule.weight {
            Weight::One => push(&env, Cyclotomic::one(p))?,
            Weight::Omega(e) => {
                let x = e.eval(&env, p)?;
                push(&env, Cyclotomic::zeta_pow(p, x as i64 * scale))?
            }
            Weight::AvgOmega(e) => {
                let inv_p = BigRational::new(BigInt::from(1), BigInt::from(p.get()));
                for j in p.elements() {
                    env.insert("j".into(), j);
                    let x = e.eval(&env, p)?;
                    push(
                        &env,
                        Cyclotomic::zeta_pow(p, x as i64 * scale).scale(&inv_p),
                    )?;
                }
            }
        }
        Ok(out)
    }

    /// Inflates `e` (over the fused walls) onto the four walls
    /// `[M, N, P, Q]`, in tensor components `mu` (lower) and `nu` (upper).
    pub fn inflate(
        &self,
        e: &TubeElement2,
        walls: Walls4,
        mu: u32,
        nu: u32,
    ) -> Result<TubeElement4> {
        let p = e.p;
        let mut out = TubeElement4::zero(walls, p);
        for (t, c) in &e.terms {
            let lower =
                self.expand_vertex(walls[0], walls[1], Vertex::A, t.bottom, t.g, t.h, mu, p)?;
            let upper =
                self.expand_vertex(walls[2], walls[3], Vertex::B, t.top, t.g, t.h, nu, p)?;
            for a in &lower {
                let ca = c * &a.weight;
                for b in &upper {
                    let tube = Tube4 {
                        objects: [a.left_object, a.right_object, b.left_object, b.right_object],
                        strings: [t.g, b.middle, t.h, a.middle],
                    };
                    out.add_term(tube, &ca * &b.weight);
                }
            }
        }
        Ok(out)
    }
}

/// Inflates every simple defect of every fused wall pair through every
/// factorisation and component, and lists the cases whose result is zero or
/// not idempotent.
pub fn inflation_failures(table: &InflationTable, p: PrimeModulus) -> Result<Vec<String>> {
    let walls = crate::walls::enumerate_walls(p);
    let mut failures = Vec::new();
    for &m in &walls {
        for &n in &walls {
            let lower = wall_fuse(m, n, p);
            for &pp in &walls {
                for &q in &walls {
                    let upper = wall_fuse(pp, q, p);
                    for d in crate::tubes::classify_defects(lower.wall, upper.wall, p)? {
                        for mu in 0..lower.multiplicity {
                            for nu in 0..upper.multiplicity {
                                let e = table.inflate(&d.idempotent, [m, n, pp, q], mu, nu)?;
                                if e.is_zero() || e.compose(&e) != e {
                                    failures.push(format!(
                                        "{m} (x) {n} / {pp} (x) {q}: {} ({mu},{nu})",
                                        d.defect
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_table_covers_every_wall_product() {
        let t = InflationTable::standard();
        assert_eq!(t.rules.len(), 72);
        let p = PrimeModulus::new(3).unwrap();
        for a in crate::walls::enumerate_walls(p) {
            for b in crate::walls::enumerate_walls(p) {
                assert!(
                    t.rule(a, b, Vertex::A).is_ok() && t.rule(a, b, Vertex::B).is_ok(),
                    "{a} {b}"
                );
                let fused = WallKind::of(wall_fuse(a, b, p).wall);
                assert_eq!(t.rule(a, b, Vertex::A).unwrap().target, fused);
            }
        }
    }
}
