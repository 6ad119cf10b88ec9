//! Exact Gaussian elimination over the cyclotomic field for sparse vectors.

use std::collections::BTreeMap;

use crate::arith::Cyclotomic;

/// A sparse vector indexed by an ordered key.
pub type SparseVec<K> = BTreeMap<K, Cyclotomic>;

/// Incremental row echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    /// Rows normalised so that their pivot coefficient is one.
    rows: Vec<(K, SparseVec<K>)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    let t = x * &c;
                    let e = v
                        .entry(k.clone())
                        .or_insert_with(|| Cyclotomic::zero(c.modulus()));
                    *e = &*e - &t;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let v = self.reduce(v);
        let Some((pivot, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inverse().expect("pivot is nonzero");
        let v: SparseVec<K> = v.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        // Keep rows fully reduced against the new pivot.
        for (_, row) in self.rows.iter_mut() {
            if let Some(f) = row.get(&pivot).cloned() {
                for (k, x) in &v {
                    let t = x * &f;
                    let e = row
                        .entry(k.clone())
                        .or_insert_with(|| Cyclotomic::zero(f.modulus()));
                    *e = &*e - &t;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.iter().map(|(_, r)| r)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeModulus;

    #[test]
    fn rank_detects_dependency() {
        let p = PrimeModulus::new(3).unwrap();
        let w = Cyclotomic::omega_pow(p, 1);
        let one = Cyclotomic::one(p);
        let v1: SparseVec<u8> = [(0, one.clone()), (1, w.clone())].into();
        let v2: SparseVec<u8> = [(0, w.clone()), (1, &w * &w)].into();
        let v3: SparseVec<u8> = [(1, one.clone())].into();
        assert_eq!(rank(vec![v1.clone(), v2.clone()]), 1);
        assert_eq!(rank(vec![v1, v2, v3]), 2);
    }
}
