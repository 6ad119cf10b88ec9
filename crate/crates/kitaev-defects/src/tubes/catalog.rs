//! Reference primitive idempotents for every family of simple defects.
//!
//! For each wall pair the simple defects are labelled by at most two residues
//! (an orbit label such as `a` or a character label such as `x`).  Each entry
//! fixes the representative inner objects and an explicit minimal idempotent;
//! the classifier derives idempotents independently and matches them against
//! this catalogue to assign labels.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Defect, Tube2, TubeElement2};
use crate::arith::{theta, Cyclotomic, PrimeModulus};
use crate::error::{Error, Result};
use crate::walls::{Wall, WallObject};

/// Objects and idempotent of one catalogued simple defect.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub bottom_object: WallObject,
    pub top_object: WallObject,
    pub idempotent: TubeElement2,
}

/// Number of labels carried by simple defects between `bottom` and `top`.
pub fn family_arity(bottom: Wall, top: Wall) -> usize {
    use Wall::*;
    match (bottom, top) {
        (T, T) | (L, L) | (R, R) | (F0, F0) => 2,
        (X(k), X(l)) if k == l => 2,
        (F(q), F(r)) if q == r => 2,
        (X(_), X(_)) | (F(_), F(_)) => 0,
        (T, F0) | (T, F(_)) | (L, R) | (L, X(_)) | (R, L) | (R, X(_)) => 0,
        (F0, T) | (F0, F(_)) | (X(_), L) | (X(_), R) | (F(_), T) | (F(_), F0) => 0,
        _ => 1,
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The catalogued objects and idempotent of `defect`.
pub fn catalog_entry(defect: &Defect, p: PrimeModulus) -> Result<CatalogEntry> {
    use Wall::*;
    use WallObject::{Pair, Single, Star};
    defect.validate(p)?;
    let (b, t) = (defect.bottom, defect.top);
    let lab = |i: usize| defect.labels[i];
    let pp = p.get() as i64;
    let neg = |x: u32| p.neg(x);
    let inv = |x: u32| p.inv(x).expect("wall parameters are units");
    let w = |k: u32| Cyclotomic::omega_pow(p, k as i64);

    let bottom_object = match b {
        T => Pair(0, 0),
        L | R | X(_) => Single(0),
        F0 | F(_) => Star,
    };
    // Top representative.
    let top_object = match (b, t) {
        (T, T) => Pair(lab(0), lab(1)),
        (T, F0 | F(_)) => Star,
        (T, _) => Single(lab(0)),
        (L, T) => Pair(0, lab(0)),
        (R | X(_), T) => Pair(lab(0), 0),
        (F0 | F(_), T) => Pair(0, 0),
        (L, L) | (R, R) => Single(lab(0)),
        (X(k), X(l)) if k == l => Single(lab(0)),
        (_, F0 | F(_)) => Star,
        _ => Single(0),
    };

    // Strings of the stabiliser tubes and their coefficients.
    let mut terms: Vec<((u32, u32), Cyclotomic)> = Vec::new();
    let single = |g: &dyn Fn(u32) -> (u32, u32),
                  coef: &dyn Fn(u32) -> Cyclotomic|
     -> Vec<((u32, u32), Cyclotomic)> {
        p.elements()
            .map(|k| (g(k), coef(k).scale(&rational(1, pp))))
            .collect()
    };
    match (b, t) {
        // Free orbits: the identity tube.
        (T, _)
        | (L, T)
        | (L, R)
        | (L, X(_))
        | (R, T)
        | (R, L)
        | (R, X(_))
        | (F0, T)
        | (X(_), T)
        | (X(_), L)
        | (X(_), R)
        | (F(_), T) => terms.push(((0, 0), Cyclotomic::one(p))),
        (X(k), X(l)) if k != l => terms.push(((0, 0), Cyclotomic::one(p))),
        // Left strings only.
        (L, L) | (L, F0) | (L, F(_)) | (F0, L) | (F(_), L) => {
            let x = lab(defect.labels.len() - 1);
            terms = single(&|g| (g, 0), &|g| w(p.mul(g, x)));
        }
        // Right strings only.
        (R, R) | (R, F0) | (R, F(_)) | (F0, R) | (F(_), R) => {
            let x = lab(defect.labels.len() - 1);
            terms = single(&|g| (0, neg(g)), &|g| w(p.mul(g, x)));
        }
        (F0, F0) | (F(_), F(_)) if family_arity(b, t) == 2 => {
            let (x, y) = (lab(0), lab(1));
            for g in p.elements() {
                for h in p.elements() {
                    let c = w(p.add(p.mul(g, x), p.mul(h, y))).scale(&rational(1, pp * pp));
                    terms.push(((g, neg(h)), c));
                }
            }
        }
        // Noncommutative stabilisers: a minimal idempotent of the matrix block.
        (F0, F(_)) | (F(_), F0) | (F(_), F(_)) => {
            terms = single(&|g| (0, neg(g)), &|_| Cyclotomic::one(p));
        }
        (F0, X(l)) => {
            let x = lab(0);
            terms = single(&|g| (g, neg(p.mul(inv(l), g))), &|g| w(p.mul(g, x)));
        }
        (X(k), F0) => {
            let x = lab(0);
            terms = single(&|g| (g, neg(p.mul(inv(k), g))), &|g| w(p.mul(g, x)));
        }
        (X(k), X(_)) => {
            let x = lab(1);
            terms = single(&|g| (p.mul(k, g), neg(g)), &|g| w(p.mul(g, x)));
        }
        (X(k), F(r)) => {
            let x = lab(0);
            terms = single(&|g| (p.mul(k, g), neg(g)), &|g| {
                theta(x, k as i64 * r as i64, g, p)
            });
        }
        (F(q), X(l)) => {
            let x = lab(0);
            terms = single(&|g| (p.mul(l, g), neg(g)), &|g| {
                theta(x, -(q as i64 * l as i64), g, p)
            });
        }
        _ => return Err(Error::Internal(format!("no catalogue entry for {defect}"))),
    }

    let mut idempotent = TubeElement2::zero((b, t), p);
    for ((g, h), c) in terms {
        idempotent.add_term(
            Tube2 {
                bottom: bottom_object,
                top: top_object,
                g,
                h,
            },
            c,
        );
    }
    Ok(CatalogEntry {
        bottom_object,
        top_object,
        idempotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walls::enumerate_walls;

    /// Every catalogued element is a nonzero idempotent made of endomorphisms.
    #[test]
    fn catalogue_is_idempotent() {
        for p in [2, 3, 5] {
            let p = PrimeModulus::new(p).unwrap();
            for b in enumerate_walls(p) {
                for t in enumerate_walls(p) {
                    let n = family_arity(b, t) as u32;
                    let labels: Vec<Vec<u32>> = match n {
                        0 => vec![vec![]],
                        1 => p.elements().map(|x| vec![x]).collect(),
                        _ => vec![vec![0, 0], vec![1, p.get() - 1], vec![p.get() - 1, 1]],
                    };
                    for l in labels {
                        let d = Defect::new(b, t, l);
                        let e = catalog_entry(&d, p).unwrap();
                        assert!(!e.idempotent.is_zero());
                        for tube in e.idempotent.terms.keys() {
                            assert!(tube.is_endomorphism((b, t), p), "{d}: {tube:?}");
                        }
                        assert_eq!(
                            e.idempotent.compose(&e.idempotent),
                            e.idempotent,
                            "{d} at p={p}"
                        );
                    }
                }
            }
        }
    }
}
