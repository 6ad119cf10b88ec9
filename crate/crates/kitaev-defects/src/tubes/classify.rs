//! Classification of simple defects from first principles.
//!
//! The tube algebra of a wall pair decomposes along orbits of object pairs
//! under `G = Z/p x Z/p`.  On an orbit representative `A` with stabiliser
//! `S`, `End(A)` is the twisted group algebra of `S` with cocycle given by
//! the tube structure constants.  When the cocycle is symmetric on `S`, the
//! algebra is commutative and its primitive idempotents are the twisted
//! characters `e = |S|^-1 sum chi(s) T_s`; otherwise the cocycle is
//! nondegenerate, `End(A)` is a single matrix block and one idempotent
//! supported on an isotropic line represents the unique simple defect.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::catalog::{catalog_entry, family_arity};
use super::{tube2_phase, Defect, Tube2, TubeElement2};
use crate::arith::{Cyclotomic, PrimeModulus};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::walls::{Wall, WallObject};

/// A simple defect together with its derived primitive idempotent.
#[derive(Clone, Debug)]
pub struct ClassifiedDefect {
    pub defect: Defect,
    pub bottom_object: WallObject,
    pub top_object: WallObject,
    pub idempotent: TubeElement2,
}

/// Matrix-block decomposition of a tube algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockStructure {
    /// Size `n` of each `n x n` block.
    pub blocks: Vec<u32>,
    /// Dimension of the whole algebra.
    pub dimension: u64,
}

impl BlockStructure {
    /// Sum of `n^2` over blocks; equals `dimension` for a semisimple algebra.
    pub fn block_dimension(&self) -> u64 {
        self.blocks.iter().map(|&n| (n as u64) * (n as u64)).sum()
    }
}

struct Orbit {
    rep: (WallObject, WallObject),
    size: usize,
    stabiliser: Vec<(u32, u32)>,
}

/// Orbits of object pairs.  Each orbit is represented by the first pair of
/// `preferred` it contains, falling back to its smallest pair.
fn orbits(
    walls: (Wall, Wall),
    preferred: &[(WallObject, WallObject)],
    p: PrimeModulus,
) -> Vec<Orbit> {
    let (b, t) = walls;
    let mut pairs: Vec<(WallObject, WallObject)> = Vec::new();
    for x in b.objects(p) {
        for y in t.objects(p) {
            pairs.push((x, y));
        }
    }
    pairs.sort();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &first in &pairs {
        if seen.contains(&first) {
            continue;
        }
        let mut members = BTreeSet::new();
        for g in p.elements() {
            for h in p.elements() {
                members.insert((b.act(g, first.0, h, p), t.act(g, first.1, h, p)));
            }
        }
        let rep = preferred
            .iter()
            .copied()
            .find(|x| members.contains(x))
            .unwrap_or(first);
        let mut size = 0;
        let mut stabiliser = Vec::new();
        for g in p.elements() {
            for h in p.elements() {
                let img = (b.act(g, rep.0, h, p), t.act(g, rep.1, h, p));
                if img == rep {
                    stabiliser.push((g, h));
                }
                if seen.insert(img) {
                    size += 1;
                }
            }
        }
        out.push(Orbit {
            rep,
            size,
            stabiliser,
        });
    }
    out
}

fn cocycle_symmetric(walls: (Wall, Wall), s: &[(u32, u32)], p: PrimeModulus) -> bool {
    s.iter().all(|&x| {
        s.iter()
            .all(|&y| tube2_phase(walls, x, y, p) == tube2_phase(walls, y, x, p))
    })
}

/// Generators of a subgroup of `(Z/p)^2` given by its element list.
fn generators(s: &[(u32, u32)], p: PrimeModulus) -> Vec<(u32, u32)> {
    let mut gens = Vec::new();
    let mut span: BTreeSet<(u32, u32)> = [(0, 0)].into();
    for &x in s {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let old: Vec<_> = span.iter().copied().collect();
        for y in old {
            for n in p.elements() {
                span.insert((p.add(y.0, p.mul(n, x.0)), p.add(y.1, p.mul(n, x.1))));
            }
        }
    }
    gens
}

/// Twisted characters of `s` (values as exponents of `zeta_N`) satisfying
/// `chi(x + y) = chi(x) chi(y) c(x, y)`.
fn twisted_characters(
    walls: (Wall, Wall),
    s: &[(u32, u32)],
    p: PrimeModulus,
) -> Vec<BTreeMap<(u32, u32), u32>> {
    let n = p.field_order();
    let scale = n / p.get();
    let c = |x: (u32, u32), y: (u32, u32)| tube2_phase(walls, x, y, p) * scale;
    let gens = generators(s, p);
    let add = |x: (u32, u32), y: (u32, u32)| (p.add(x.0, y.0), p.add(x.1, y.1));
    let mut out = Vec::new();
    let choices = (n as usize).pow(gens.len() as u32);
    for code in 0..choices {
        let lambdas: Vec<u32> = (0..gens.len())
            .map(|i| (code / (n as usize).pow(i as u32)) as u32 % n)
            .collect();
        // Breadth-first construction chi(g_i + x) = chi(g_i) chi(x) c(g_i, x).
        let mut chi: BTreeMap<(u32, u32), u32> = [((0, 0), 0)].into();
        let mut frontier = vec![(0u32, 0u32)];
        while let Some(x) = frontier.pop() {
            for (i, &g) in gens.iter().enumerate() {
                let y = add(g, x);
                if !chi.contains_key(&y) {
                    let v = (lambdas[i] + chi[&x] + c(g, x)) % n;
                    chi.insert(y, v);
                    frontier.push(y);
                }
            }
        }
        let ok = s.iter().all(|&x| {
            s.iter()
                .all(|&y| chi[&add(x, y)] == (chi[&x] + chi[&y] + c(x, y)) % n)
        });
        if ok {
            out.push(chi);
        }
    }
    out
}

fn character_idempotent(
    walls: (Wall, Wall),
    rep: (WallObject, WallObject),
    chi: &BTreeMap<(u32, u32), u32>,
    p: PrimeModulus,
) -> TubeElement2 {
    let norm = BigRational::new(BigInt::from(1), BigInt::from(chi.len()));
    let mut e = TubeElement2::zero(walls, p);
    for (&(g, h), &z) in chi {
        e.add_term(
            Tube2 {
                bottom: rep.0,
                top: rep.1,
                g,
                h,
            },
            Cyclotomic::zeta_pow(p, z as i64).scale(&norm),
        );
    }
    e
}

/// Primitive idempotents for one orbit representative.
fn orbit_idempotents(walls: (Wall, Wall), orbit: &Orbit, p: PrimeModulus) -> Vec<TubeElement2> {
    if cocycle_symmetric(walls, &orbit.stabiliser, p) {
        twisted_characters(walls, &orbit.stabiliser, p)
            .iter()
            .map(|chi| character_idempotent(walls, orbit.rep, chi, p))
            .collect()
    } else {
        // Nondegenerate: pick the first isotropic line carrying a twisted
        // character; all its character idempotents are equivalent.
        let lines = [(0u32, 1u32), (1, 0)]
            .into_iter()
            .chain(p.elements().map(|g| (1, g)))
            .map(|(g, h)| {
                p.elements()
                    .map(|n| (p.mul(n, g), p.mul(n, h)))
                    .collect::<Vec<_>>()
            });
        for line in lines {
            if !line.iter().all(|x| orbit.stabiliser.contains(x))
                || !cocycle_symmetric(walls, &line, p)
            {
                continue;
            }
            if let Some(chi) = twisted_characters(walls, &line, p).first() {
                return vec![character_idempotent(walls, orbit.rep, chi, p)];
            }
        }
        Vec::new()
    }
}

/// `dim(e A e)` for an idempotent supported on a single object pair; 1 for
/// a primitive idempotent.
pub fn corner_dimension(e: &TubeElement2) -> usize {
    let p = e.p;
    let objs = e.object_pairs();
    let mut vecs = Vec::new();
    for &(b, t) in &objs {
        for g in p.elements() {
            for h in p.elements() {
                let tube = Tube2 {
                    bottom: b,
                    top: t,
                    g,
                    h,
                };
                if !tube.is_endomorphism(e.walls, p) {
                    continue;
                }
                let mut x = TubeElement2::zero(e.walls, p);
                x.add_term(tube, Cyclotomic::one(p));
                vecs.push(e.compose(&x).compose(e).terms);
            }
        }
    }
    rank(vecs)
}

fn label_tuples(arity: usize, p: PrimeModulus) -> Vec<Vec<u32>> {
    match arity {
        0 => vec![vec![]],
        1 => p.elements().map(|x| vec![x]).collect(),
        _ => p
            .elements()
            .flat_map(|x| p.elements().map(move |y| vec![x, y]))
            .collect(),
    }
}

/// All simple defects between `bottom` and `top`, with derived idempotents
/// matched against the catalogue to fix labels.
pub fn classify_defects(bottom: Wall, top: Wall, p: PrimeModulus) -> Result<Vec<ClassifiedDefect>> {
    bottom.validate(p)?;
    top.validate(p)?;
    let walls = (bottom, top);
    let catalogue: Vec<(Defect, TubeElement2)> = label_tuples(family_arity(bottom, top), p)
        .into_iter()
        .map(|l| {
            let d = Defect::new(bottom, top, l);
            catalog_entry(&d, p).map(|e| (d, e.idempotent))
        })
        .collect::<Result<_>>()?;
    let preferred: Vec<_> = catalogue
        .iter()
        .flat_map(|(_, e)| e.object_pairs())
        .collect();
    let mut out = Vec::new();
    for orbit in orbits(walls, &preferred, p) {
        for e in orbit_idempotents(walls, &orbit, p) {
            if e.compose(&e) != e {
                return Err(Error::Internal(format!(
                    "derived element for {bottom}/{top} is not idempotent"
                )));
            }
            if corner_dimension(&e) != 1 {
                return Err(Error::Internal(format!(
                    "derived idempotent for {bottom}/{top} is not primitive"
                )));
            }
            let (defect, _) = catalogue.iter().find(|(_, c)| *c == e).ok_or_else(|| {
                Error::Internal(format!(
                    "derived idempotent for {bottom}/{top} matches no label"
                ))
            })?;
            out.push(ClassifiedDefect {
                defect: defect.clone(),
                bottom_object: orbit.rep.0,
                top_object: orbit.rep.1,
                idempotent: e,
            });
        }
    }
    if out.len() != catalogue.len() {
        return Err(Error::Internal(format!(
            "{bottom}/{top}: derived {} simple defects, expected {}",
            out.len(),
            catalogue.len()
        )));
    }
    out.sort_by(|a, b| a.defect.cmp(&b.defect));
    Ok(out)
}

/// Whether two defects are isomorphic, decided by a nonzero
/// `Hom(e1, e2) = e2 A e1`.
pub fn defect_equivalent(d1: &Defect, d2: &Defect, p: PrimeModulus) -> Result<bool> {
    if (d1.bottom, d1.top) != (d2.bottom, d2.top) {
        return Ok(false);
    }
    let walls = (d1.bottom, d1.top);
    let e1 = catalog_entry(d1, p)?.idempotent;
    let e2 = catalog_entry(d2, p)?.idempotent;
    for (b, t) in e1.object_pairs() {
        for g in p.elements() {
            for h in p.elements() {
                let tube = Tube2 {
                    bottom: b,
                    top: t,
                    g,
                    h,
                };
                let mut x = TubeElement2::zero(walls, p);
                x.add_term(tube, Cyclotomic::one(p));
                if !e2.compose(&x).compose(&e1).is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Matrix blocks of the tube algebra of `bottom`/`top`.
pub fn block_structure(bottom: Wall, top: Wall, p: PrimeModulus) -> Result<BlockStructure> {
    bottom.validate(p)?;
    top.validate(p)?;
    let walls = (bottom, top);
    let mut blocks = Vec::new();
    for orbit in orbits(walls, &[], p) {
        if cocycle_symmetric(walls, &orbit.stabiliser, p) {
            blocks.extend(std::iter::repeat_n(
                orbit.size as u32,
                orbit.stabiliser.len(),
            ));
        } else {
            // |S| = n^2 with n = sqrt|S|, one block of size |O| * sqrt|S|.
            let root = (orbit.stabiliser.len() as f64).sqrt().round() as u32;
            blocks.push(orbit.size as u32 * root);
        }
    }
    let pairs = (bottom.objects(p).len() * top.objects(p).len()) as u64;
    blocks.sort_unstable();
    Ok(BlockStructure {
        blocks,
        dimension: pairs * (p.get() as u64).pow(2),
    })
}
