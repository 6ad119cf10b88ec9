//! Pants spaces and fusion projectors.
//!
//! A fusion multiplicity is the rank of a projector acting on a space of
//! "pants" string diagrams: a disk with two holes, bounded by walls, in which
//! every region is crossed by labelled strings.  The two source idempotents
//! are glued into the holes and the target idempotent around the waist;
//! the rank equals the trace since the composite is idempotent.
//!
//! Every pants basis vector is a standard diagram described by a handful of
//! string labels.  Gluing concatenates attachment words on each wall (see
//! [`crate::skein`]); rewriting the result in standard form produces a phase
//! and new labels.
//!
//! Horizontal pants (walls `M`, `N` from the waist to the left and right
//! holes, `P`, `Q` from the holes to the waist) have labels `k0..k4` and
//! standard words
//!
//! ```text
//! M: [R(-k1), L(-k0)]          N: [R(-k4), L(-k3)]
//! P: [L(k0), R(k1), R(-k2)]    Q: [L(k3), R(k4), L(k2)]
//! ```
//!
//! Vertical pants (walls `M` waist -> lower hole, `N` lower -> upper hole,
//! `P` upper hole -> waist) have labels `k0..k3` and standard words
//!
//! ```text
//! M: [R(-k3), L(-k2)]   N: [L(k2), R(k3), R(-k1), L(-k0)]   P: [L(k0), R(k1)]
//! ```

use std::collections::{BTreeMap, HashMap};

use crate::arith::{Cyclotomic, PrimeModulus};
use crate::error::{Error, Result};
use crate::inflation::TubeElement4;
use crate::linalg::{Echelon, SparseVec};
use crate::skein::{Attach, Side, L, R};
use crate::tubes::{Tube2, TubeElement2};
use crate::walls::{Wall, WallObject};

/// Objects `(bottom, top)` on the boundary of one hole.
pub type HolePair = (WallObject, WallObject);

/// Pants labels `k0..k4` (vertical pants leave `k4 = 0`).
pub type Labels = [u32; 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Geometry {
    Horizontal,
    Vertical,
}

/// One term of the idempotent glued around the waist.
#[derive(Clone, Debug)]
pub struct WaistTerm {
    pub strings: Vec<u32>,
    pub inner: Vec<WallObject>,
    pub outer: Vec<WallObject>,
    pub coef: Cyclotomic,
}

/// Idempotents glued into the holes and around the waist.
#[derive(Clone, Debug)]
pub struct Projector {
    pub geometry: Geometry,
    pub p: PrimeModulus,
    /// `[M, N, P, Q]` (horizontal) or `[M, N, P]` (vertical).
    pub walls: Vec<Wall>,
    pub leg1: TubeElement2,
    pub leg2: TubeElement2,
    pub waist: Vec<WaistTerm>,
}

/// Phase exponent of a concatenation of word pieces.
fn chain_phase(q: u32, pieces: &[&[Attach]], p: PrimeModulus) -> u32 {
    if q == 0 {
        return 0;
    }
    let (mut right, mut acc) = (0u32, 0u32);
    for piece in pieces {
        for a in *piece {
            match a.side {
                Side::R => right = p.add(right, a.value),
                Side::L => acc = p.add(acc, p.mul(a.value, right)),
            }
        }
    }
    p.neg(p.mul(q, acc))
}

fn chain_totals(pieces: &[&[Attach]], p: PrimeModulus) -> (u32, u32) {
    let mut t = (0, 0);
    for piece in pieces {
        for a in *piece {
            match a.side {
                Side::L => t.0 = p.add(t.0, a.value),
                Side::R => t.1 = p.add(t.1, a.value),
            }
        }
    }
    t
}

impl Projector {
    pub fn horizontal(
        walls: [Wall; 4],
        leg1: TubeElement2,
        leg2: TubeElement2,
        waist: &TubeElement4,
    ) -> Self {
        let p = waist.p;
        let terms = waist
            .terms
            .iter()
            .map(|(t, c)| WaistTerm {
                strings: t.strings.to_vec(),
                inner: t.objects.to_vec(),
                outer: t.outer(&waist.walls, p).to_vec(),
                coef: c.clone(),
            })
            .collect();
        Projector {
            geometry: Geometry::Horizontal,
            p,
            walls: walls.to_vec(),
            leg1,
            leg2,
            waist: terms,
        }
    }

    pub fn vertical(
        walls: [Wall; 3],
        lower: TubeElement2,
        upper: TubeElement2,
        waist: &TubeElement2,
    ) -> Self {
        let p = waist.p;
        let terms = waist
            .terms
            .iter()
            .map(|(t, c)| {
                let (ob, ot) = t.outer(waist.walls, p);
                WaistTerm {
                    strings: vec![t.g, t.h],
                    inner: vec![t.bottom, t.top],
                    outer: vec![ob, ot],
                    coef: c.clone(),
                }
            })
            .collect();
        Projector {
            geometry: Geometry::Vertical,
            p,
            walls: walls.to_vec(),
            leg1: lower,
            leg2: upper,
            waist: terms,
        }
    }

    fn labels_len(&self) -> usize {
        match self.geometry {
            Geometry::Horizontal => 5,
            Geometry::Vertical => 4,
        }
    }

    /// Waist objects of the pants with the given hole objects and labels, or
    /// `None` if the labels are inconsistent with the hole objects.
    pub fn waist_objects(
        &self,
        hole1: (WallObject, WallObject),
        hole2: (WallObject, WallObject),
        k: &Labels,
    ) -> Option<Vec<WallObject>> {
        let p = self.p;
        let w = &self.walls;
        match self.geometry {
            Geometry::Horizontal => {
                let (m1, p1) = hole1;
                let (n2, q2) = hole2;
                Some(vec![
                    w[0].act(k[0], m1, k[1], p),
                    w[1].act(k[3], n2, k[4], p),
                    w[2].act(k[0], p1, p.sub(k[1], k[2]), p),
                    w[3].act(p.add(k[3], k[2]), q2, k[4], p),
                ])
            }
            Geometry::Vertical => {
                let (m1, n1) = hole1;
                let (n2, p2) = hole2;
                if w[1].act(p.sub(k[2], k[0]), n1, p.sub(k[3], k[1]), p) != n2 {
                    return None;
                }
                Some(vec![
                    w[0].act(k[2], m1, k[3], p),
                    w[2].act(k[0], p2, k[1], p),
                ])
            }
        }
    }

    /// Glues leg tubes `t1 = (g1, h1)`, `t2 = (g2, h2)` and waist strings `s`
    /// onto the standard pants `k`; see [`glue`].
    pub fn glue(&self, k: &Labels, t1: (u32, u32), t2: (u32, u32), s: &[u32]) -> (Labels, u32) {
        glue(self.geometry, &self.walls, self.p, k, t1, t2, s)
    }

    /// Waist strings that make gluing `t1`, `t2` return every label to its
    /// original value, if any.
    fn diagonal_waist(&self, t1: (u32, u32), t2: (u32, u32)) -> Option<Vec<u32>> {
        let p = self.p;
        let (g1, h1) = t1;
        let (g2, h2) = t2;
        match self.geometry {
            Geometry::Horizontal => {
                (g2 == p.neg(h1)).then(|| vec![p.neg(g1), h1, p.neg(h2), p.neg(h1)])
            }
            Geometry::Vertical => (t2 == t1).then(|| vec![p.neg(g1), p.neg(h1)]),
        }
    }

    fn hole_pairs(e: &TubeElement2) -> Vec<(WallObject, WallObject)> {
        e.object_pairs()
    }

    /// Basis of the pants space on which the projector acts.
    pub fn basis(&self) -> Vec<(Labels, HolePair, HolePair)> {
        let p = self.p.get();
        let len = self.labels_len();
        let waist_objs: Vec<&Vec<WallObject>> = self.waist.iter().map(|t| &t.inner).collect();
        let mut out = Vec::new();
        for h1 in Self::hole_pairs(&self.leg1) {
            for h2 in Self::hole_pairs(&self.leg2) {
                let total = (p as usize).pow(len as u32);
                for code in 0..total {
                    let mut k = [0u32; 5];
                    let mut c = code;
                    for slot in k.iter_mut().take(len) {
                        *slot = (c % p as usize) as u32;
                        c /= p as usize;
                    }
                    if let Some(w) = self.waist_objects(h1, h2, &k) {
                        if waist_objs.contains(&&w) {
                            out.push((k, h1, h2));
                        }
                    }
                }
            }
        }
        out
    }

    /// Trace of the projector on its pants space, as an element of the
    /// coefficient field.
    pub fn trace(&self) -> Cyclotomic {
        let p = self.p;
        let basis = self.basis();
        // Endomorphism terms of each leg, grouped by object pair.
        let legs = |e: &TubeElement2| -> Vec<(Tube2, Cyclotomic)> {
            e.terms
                .iter()
                .filter(|(t, _)| t.is_endomorphism(e.walls, p))
                .map(|(t, c)| (*t, c.clone()))
                .collect()
        };
        let (l1, l2) = (legs(&self.leg1), legs(&self.leg2));
        let mut waist_index: HashMap<(&[u32], &[WallObject]), Vec<usize>> = HashMap::new();
        for (i, t) in self.waist.iter().enumerate() {
            if t.inner == t.outer {
                waist_index
                    .entry((&t.strings, &t.inner))
                    .or_default()
                    .push(i);
            }
        }
        // Histogram of phases per (leg1 term, leg2 term, waist term).
        let mut hist: BTreeMap<(usize, usize, usize), Vec<u64>> = BTreeMap::new();
        let mut pairs: Vec<(usize, usize, Vec<u32>)> = Vec::new();
        for (i, (t1, _)) in l1.iter().enumerate() {
            for (j, (t2, _)) in l2.iter().enumerate() {
                if let Some(s) = self.diagonal_waist((t1.g, t1.h), (t2.g, t2.h)) {
                    pairs.push((i, j, s));
                }
            }
        }
        for (k, h1, h2) in &basis {
            let Some(wo) = self.waist_objects(*h1, *h2, k) else {
                continue;
            };
            for (i, j, s) in &pairs {
                let (t1, t2) = (&l1[*i].0, &l2[*j].0);
                if (t1.bottom, t1.top) != *h1 || (t2.bottom, t2.top) != *h2 {
                    continue;
                }
                let Some(ws) = waist_index.get(&(&s[..], &wo[..])) else {
                    continue;
                };
                let (new, e) = self.glue(k, (t1.g, t1.h), (t2.g, t2.h), s);
                debug_assert_eq!(&new, k);
                for &w in ws {
                    hist.entry((*i, *j, w))
                        .or_insert_with(|| vec![0; p.get() as usize])[e as usize] += 1;
                }
            }
        }
        let scale = (p.field_order() / p.get()) as usize;
        let mut total = Cyclotomic::zero(p);
        for ((i, j, w), h) in hist {
            let mut g = vec![0i64; p.field_order() as usize];
            for (e, &c) in h.iter().enumerate() {
                g[e * scale] += c as i64;
            }
            let phases = Cyclotomic::from_int_group_ring(p, &g);
            let coef = &(&l1[i].1 * &l2[j].1) * &self.waist[w].coef;
            total = &total + &(&coef * &phases);
        }
        total
    }

    /// Multiplicity: the trace, required to be a nonnegative integer.
    pub fn multiplicity(&self) -> Result<u32> {
        let t = self.trace();
        let r = t
            .as_rational()
            .ok_or_else(|| Error::Internal(format!("projector trace {t} is not rational")))?;
        if !r.is_integer() || r < &num_rational::BigRational::from_integer(0.into()) {
            return Err(Error::Internal(format!(
                "projector trace {t} is not a nonnegative integer"
            )));
        }
        u32::try_from(r.to_integer()).map_err(|_| Error::Internal("multiplicity overflow".into()))
    }

    /// Every `(leg1, leg2, waist)` term with its combined coefficient.
    fn products(&self) -> Vec<(&Tube2, &Tube2, &WaistTerm, Cyclotomic)> {
        let mut out = Vec::new();
        for (t1, c1) in &self.leg1.terms {
            for (t2, c2) in &self.leg2.terms {
                let c12 = c1 * c2;
                out.extend(self.waist.iter().map(|w| (t1, t2, w, &c12 * &w.coef)));
            }
        }
        out
    }

    fn apply_with(
        &self,
        products: &[(&Tube2, &Tube2, &WaistTerm, Cyclotomic)],
        k: &Labels,
        h1: (WallObject, WallObject),
        h2: (WallObject, WallObject),
    ) -> SparseVec<PantsKey> {
        let p = self.p;
        let scale = (p.field_order() / p.get()) as i64;
        let mut out: SparseVec<PantsKey> = BTreeMap::new();
        let Some(wo) = self.waist_objects(h1, h2, k) else {
            return out;
        };
        for (t1, t2, w, coef) in products {
            if t1.outer(self.leg1.walls, p) != h1
                || t2.outer(self.leg2.walls, p) != h2
                || w.inner != wo
            {
                continue;
            }
            let (new, e) = self.glue(k, (t1.g, t1.h), (t2.g, t2.h), &w.strings);
            let key = PantsKey {
                labels: new,
                hole1: (t1.bottom, t1.top),
                hole2: (t2.bottom, t2.top),
            };
            let c = coef.shift(e as i64 * scale);
            let slot = out.entry(key).or_insert_with(|| Cyclotomic::zero(p));
            *slot = &*slot + &c;
            if slot.is_zero() {
                out.remove(&key);
            }
        }
        out
    }

    /// Applies the projector to one basis vector.
    pub fn apply(
        &self,
        k: &Labels,
        h1: (WallObject, WallObject),
        h2: (WallObject, WallObject),
    ) -> SparseVec<PantsKey> {
        self.apply_with(&self.products(), k, h1, h2)
    }

    /// Explicit image of the projector: a basis of its column space.
    pub fn image(&self) -> Echelon<PantsKey> {
        let mut ech = Echelon::new();
        for col in self.columns().into_values() {
            ech.insert(col);
        }
        ech
    }

    /// The projector as explicit columns, one per basis pants.
    pub fn columns(&self) -> BTreeMap<PantsKey, SparseVec<PantsKey>> {
        let products = self.products();
        self.basis()
            .into_iter()
            .map(|(labels, hole1, hole2)| {
                (
                    PantsKey {
                        labels,
                        hole1,
                        hole2,
                    },
                    self.apply_with(&products, &labels, hole1, hole2),
                )
            })
            .collect()
    }

    /// Checks `P^2 = P` explicitly on the pants space.
    pub fn is_idempotent(&self) -> bool {
        let columns = self.columns();
        columns.values().all(|once| {
            let mut twice: SparseVec<PantsKey> = BTreeMap::new();
            for (key, c) in once {
                let Some(col) = columns.get(key) else {
                    return false;
                };
                for (key2, c2) in col {
                    let v = c * c2;
                    let slot = twice
                        .entry(*key2)
                        .or_insert_with(|| Cyclotomic::zero(self.p));
                    *slot = &*slot + &v;
                    if slot.is_zero() {
                        twice.remove(key2);
                    }
                }
            }
            &twice == once
        })
    }
}

/// Glues leg tubes `t1 = (g1, h1)`, `t2 = (g2, h2)` and waist strings `s`
/// (four for horizontal pants, two for vertical) onto the standard pants
/// `k`, and rewrites the result in standard form.  Returns the new labels
/// and the exponent of `omega` picked up on the way.
pub fn glue(
    geometry: Geometry,
    walls: &[Wall],
    p: PrimeModulus,
    k: &Labels,
    t1: (u32, u32),
    t2: (u32, u32),
    s: &[u32],
) -> (Labels, u32) {
    let n = |x| p.neg(x);
    let q: Vec<u32> = walls.iter().map(|w| w.twist()).collect();
    let (g1, h1) = t1;
    let (g2, h2) = t2;
    match geometry {
        Geometry::Horizontal => {
            let (s1, s2, s3, s4) = (s[0], s[1], s[2], s[3]);
            let std_m = [R(n(k[1])), L(n(k[0]))];
            let std_n = [R(n(k[4])), L(n(k[3]))];
            let std_p = [L(k[0]), R(k[1]), R(n(k[2]))];
            let std_q = [L(k[3]), R(k[4]), L(k[2])];
            let m: [&[Attach]; 3] = [&[R(n(s4)), L(n(s1))], &std_m, &[R(n(h1)), L(n(g1))]];
            let nn: [&[Attach]; 3] = [&[L(s4), R(n(s3))], &std_n, &[R(n(h2)), L(n(g2))]];
            let pp: [&[Attach]; 3] = [&[L(g1), R(h1)], &std_p, &[L(s1), R(n(s2))]];
            let qq: [&[Attach]; 3] = [&[L(g2), R(h2)], &std_q, &[L(s2), R(s3)]];
            let (lm, rm) = chain_totals(&m, p);
            let (ln, rn) = chain_totals(&nn, p);
            let (lq, _) = chain_totals(&qq, p);
            let k0 = n(lm);
            let k1 = n(rm);
            let k3 = n(ln);
            let k4 = n(rn);
            let k2 = p.sub(lq, k3);
            let new = [k0, k1, k2, k3, k4];
            let std_new: [[Attach; 3]; 4] = [
                [R(n(k1)), L(n(k0)), L(0)],
                [R(n(k4)), L(n(k3)), L(0)],
                [L(k0), R(k1), R(n(k2))],
                [L(k3), R(k4), L(k2)],
            ];
            let mut e = 0;
            for (i, word) in [&m[..], &nn[..], &pp[..], &qq[..]].into_iter().enumerate() {
                e = p.add(
                    e,
                    p.sub(
                        chain_phase(q[i], word, p),
                        chain_phase(q[i], &[&std_new[i]], p),
                    ),
                );
            }
            (new, e)
        }
        Geometry::Vertical => {
            let (g0, h0) = (s[0], s[1]);
            let std_m = [R(n(k[3])), L(n(k[2]))];
            let std_n = [L(k[2]), R(k[3]), R(n(k[1])), L(n(k[0]))];
            let std_p = [L(k[0]), R(k[1])];
            let m: [&[Attach]; 3] = [&[R(n(h0)), L(n(g0))], &std_m, &[R(n(h1)), L(n(g1))]];
            let nn: [&[Attach]; 3] = [&[L(g1), R(h1)], &std_n, &[R(n(h2)), L(n(g2))]];
            let pp: [&[Attach]; 3] = [&[L(g2), R(h2)], &std_p, &[L(g0), R(h0)]];
            let (lm, rm) = chain_totals(&m, p);
            let (lp, rp) = chain_totals(&pp, p);
            let (k0, k1, k2, k3) = (lp, rp, n(lm), n(rm));
            let new = [k0, k1, k2, k3, 0];
            let std_new: [&[Attach]; 3] = [
                &[R(n(k3)), L(n(k2))],
                &[L(k2), R(k3), R(n(k1)), L(n(k0))],
                &[L(k0), R(k1)],
            ];
            let mut e = 0;
            for (i, word) in [&m[..], &nn[..], &pp[..]].into_iter().enumerate() {
                e = p.add(
                    e,
                    p.sub(
                        chain_phase(q[i], word, p),
                        chain_phase(q[i], &[std_new[i]], p),
                    ),
                );
            }
            (new, e)
        }
    }
}

/// Standard form of a general horizontal pants: the standard pants with
/// labels `(g0, g1, 0, g2, g3)` wrapped in a waist tube with strings
/// `h0..h3`.
pub fn normal_form_horizontal(
    walls: [Wall; 4],
    g: [u32; 4],
    h: [u32; 4],
    p: PrimeModulus,
) -> (Labels, u32) {
    glue(
        Geometry::Horizontal,
        &walls,
        p,
        &[g[0], g[1], 0, g[2], g[3]],
        (0, 0),
        (0, 0),
        &h,
    )
}

/// Standard form of a general vertical pants: the standard pants with
/// `k2 = g0`, `k3 = g1`, `k0 = g2`, `k1 = g3` wrapped in a waist tube with
/// strings `(h0, h1)`.
pub fn normal_form_vertical(
    walls: [Wall; 3],
    g: [u32; 4],
    h: [u32; 2],
    p: PrimeModulus,
) -> (Labels, u32) {
    glue(
        Geometry::Vertical,
        &walls,
        p,
        &[g[2], g[3], g[0], g[1], 0],
        (0, 0),
        (0, 0),
        &h,
    )
}

/// A pants basis vector: labels together with the hole objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PantsKey {
    pub labels: Labels,
    pub hole1: (WallObject, WallObject),
    pub hole2: (WallObject, WallObject),
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn pm(p: u32) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    /// `Omega_W(a, b)` as an exponent of `omega`.
    fn om(w: Wall, a: u32, b: u32, p: PrimeModulus) -> u32 {
        p.mul(w.twist(), p.mul(a, b))
    }

    /// Closed-form coefficient of the general horizontal pants.
    fn horizontal_coefficient(
        walls: [Wall; 4],
        g: [u32; 4],
        h: [u32; 4],
        p: PrimeModulus,
    ) -> (Labels, u32) {
        let [m, n, pp, q] = walls;
        let [g0, g1, g2, g3] = g;
        let [h0, h1, h2, h3] = h;
        let g3h2 = p.add(g3, h2);
        let num = [
            om(m, p.neg(h0), p.neg(g1), p),
            om(q, h1, h2, p),
            om(n, h3, p.neg(g3h2), p),
            om(q, h3, g3h2, p),
        ]
        .into_iter()
        .fold(0, |a, b| p.add(a, b));
        let e = p.sub(num, om(pp, h0, g1, p));
        (
            [
                p.add(h0, g0),
                p.add(g1, h3),
                p.add(h1, h3),
                p.sub(g2, h3),
                g3h2,
            ],
            e,
        )
    }

    /// Closed-form coefficient of the general vertical pants.
    fn vertical_coefficient(
        walls: [Wall; 3],
        g: [u32; 4],
        h: [u32; 2],
        p: PrimeModulus,
    ) -> (Labels, u32) {
        let [m, n, pp] = walls;
        let [g0, g1, g2, g3] = g;
        let [h0, h1] = h;
        let num = p.add(om(m, p.neg(h0), p.neg(g1), p), om(n, p.neg(h0), g1, p));
        let den = p.add(om(pp, h0, g3, p), om(n, h0, p.neg(g3), p));
        // Labels (k0, k1, k2, k3) = (h0 g2, g3 h1, h0 g0, g1 h1).
        (
            [
                p.add(h0, g2),
                p.add(g3, h1),
                p.add(h0, g0),
                p.add(g1, h1),
                0,
            ],
            p.sub(num, den),
        )
    }

    fn twisted_walls(p: PrimeModulus) -> Vec<Wall> {
        let mut v = vec![Wall::T, Wall::F0];
        v.extend(p.units().map(Wall::F));
        v
    }

    #[test]
    fn vertical_normal_form_matches_closed_form_exhaustively() {
        let p = pm(3);
        let walls = twisted_walls(p);
        for &m in &walls {
            for &n in &walls {
                for &pp in &walls {
                    for code in 0..3u32.pow(6) {
                        let d = |i: u32| (code / 3u32.pow(i)) % 3;
                        let (g, h) = ([d(0), d(1), d(2), d(3)], [d(4), d(5)]);
                        assert_eq!(
                            normal_form_vertical([m, n, pp], g, h, p),
                            vertical_coefficient([m, n, pp], g, h, p),
                            "{m} {n} {pp} {g:?} {h:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn identity_gluing_is_trivial() {
        let p = pm(5);
        let walls = [Wall::F(1), Wall::F(2), Wall::F(3), Wall::F(4)];
        let k = [1, 2, 3, 4, 0];
        assert_eq!(
            glue(Geometry::Horizontal, &walls, p, &k, (0, 0), (0, 0), &[0; 4]),
            (k, 0)
        );
        assert_eq!(
            glue(
                Geometry::Vertical,
                &walls[..3],
                p,
                &k,
                (0, 0),
                (0, 0),
                &[0; 2]
            ),
            (k, 0)
        );
    }

    fn wall_strategy() -> impl Strategy<Value = Wall> {
        prop_oneof![
            Just(Wall::T),
            Just(Wall::L),
            Just(Wall::R),
            Just(Wall::F0),
            (1u32..5).prop_map(Wall::X),
            (1u32..5).prop_map(Wall::F)
        ]
    }

    proptest! {
        #[test]
        fn horizontal_normal_form_matches_closed_form(
            walls in [wall_strategy(), wall_strategy(), wall_strategy(), wall_strategy()],
            g in [0u32..5, 0u32..5, 0u32..5, 0u32..5],
            h in [0u32..5, 0u32..5, 0u32..5, 0u32..5],
        ) {
            let p = pm(5);
            prop_assert_eq!(normal_form_horizontal(walls, g, h, p), horizontal_coefficient(walls, g, h, p));
        }

        #[test]
        fn vertical_normal_form_matches_closed_form(
            walls in [wall_strategy(), wall_strategy(), wall_strategy()],
            g in [0u32..5, 0u32..5, 0u32..5, 0u32..5],
            h in [0u32..5, 0u32..5],
        ) {
            let p = pm(5);
            prop_assert_eq!(normal_form_vertical(walls, g, h, p), vertical_coefficient(walls, g, h, p));
        }

        /// The holes and the waist are disjoint, so gluing in stages agrees
        /// with gluing everything at once.
        #[test]
        fn gluing_order_is_irrelevant(
            walls in [wall_strategy(), wall_strategy(), wall_strategy(), wall_strategy()],
            k in [0u32..5, 0u32..5, 0u32..5, 0u32..5, 0u32..5],
            t1 in (0u32..5, 0u32..5),
            t2 in (0u32..5, 0u32..5),
            s in [0u32..5, 0u32..5, 0u32..5, 0u32..5],
            vertical in any::<bool>(),
        ) {
            let p = pm(5);
            let (geom, walls, s, k): (Geometry, &[Wall], &[u32], Labels) = if vertical {
                (Geometry::Vertical, &walls[..3], &s[..2], [k[0], k[1], k[2], k[3], 0])
            } else {
                (Geometry::Horizontal, &walls[..], &s[..], k)
            };
            let zero = vec![0; s.len()];
            let all = glue(geom, walls, p, &k, t1, t2, s);
            let (k1, e1) = glue(geom, walls, p, &k, t1, (0, 0), &zero);
            let (k2, e2) = glue(geom, walls, p, &k1, (0, 0), t2, &zero);
            let (k3, e3) = glue(geom, walls, p, &k2, (0, 0), (0, 0), s);
            prop_assert_eq!(all, (k3, p.add(e1, p.add(e2, e3))));
            let (k1, e1) = glue(geom, walls, p, &k, (0, 0), (0, 0), s);
            let (k2, e2) = glue(geom, walls, p, &k1, (0, 0), t2, &zero);
            let (k3, e3) = glue(geom, walls, p, &k2, t1, (0, 0), &zero);
            prop_assert_eq!(all, (k3, p.add(e1, p.add(e2, e3))));
        }
    }
}
