//! Fusion engines: horizontal (tensor product of defects side by side) and
//! vertical (composition of a lower and an upper defect sharing a wall).
//!
//! Both engines glue derived idempotents into a pants diagram and read off
//! each multiplicity as the trace of the resulting projector.  They are
//! selected by name through [`engine`].

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};
use crate::inflation::InflationTable;
use crate::linalg::SparseVec;
use crate::pants::{PantsKey, Projector};
use crate::tubes::{classify_defects, ClassifiedDefect, Defect};
use crate::walls::{wall_fuse, Wall};

/// One simple summand with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTerm {
    pub defect: Defect,
    pub multiplicity: u32,
}

/// The decomposition of one tensor component `(mu, nu)` of the result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionComponent {
    pub mu: u32,
    pub nu: u32,
    pub terms: Vec<FusionTerm>,
}

/// Result of fusing two defects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionOutcome {
    /// Engine name, `horizontal` or `vertical`.
    pub mode: String,
    pub left: Defect,
    pub right: Defect,
    pub bottom: Wall,
    pub top: Wall,
    pub components: Vec<FusionComponent>,
}

impl FusionOutcome {
    /// Multiplicity of `d` in component `(mu, nu)`.
    pub fn multiplicity(&self, mu: u32, nu: u32, d: &Defect) -> u32 {
        self.components
            .iter()
            .filter(|c| c.mu == mu && c.nu == nu)
            .flat_map(|c| &c.terms)
            .filter(|t| &t.defect == d)
            .map(|t| t.multiplicity)
            .sum()
    }
}

/// The simple defects of one wall pair.
type SharedDefects = Arc<Vec<ClassifiedDefect>>;

/// Cache of derived simple defects per wall pair.
#[derive(Debug, Default)]
pub struct DefectCache {
    entries: Mutex<HashMap<(u32, Wall, Wall), SharedDefects>>,
}

impl DefectCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn defects(
        &self,
        bottom: Wall,
        top: Wall,
        p: PrimeModulus,
    ) -> Result<Arc<Vec<ClassifiedDefect>>> {
        let key = (p.get(), bottom, top);
        if let Some(v) = self.entries.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(classify_defects(bottom, top, p)?);
        self.entries
            .lock()
            .expect("cache lock")
            .insert(key, v.clone());
        Ok(v)
    }

    /// The derived idempotent of one defect.
    pub fn find(&self, d: &Defect, p: PrimeModulus) -> Result<ClassifiedDefect> {
        d.validate(p)?;
        self.defects(d.bottom, d.top, p)?
            .iter()
            .find(|c| &c.defect == d)
            .cloned()
            .ok_or_else(|| Error::InvalidDefect(d.to_string()))
    }
}

/// A candidate summand with the projector onto its multiplicity space.
pub type Target = (Defect, Projector);

/// The projectors whose ranks make up one fusion.
#[derive(Clone, Debug)]
pub struct FusionSetup {
    pub bottom: Wall,
    pub top: Wall,
    /// Per component `(mu, nu)`: every candidate target with its projector.
    pub components: Vec<(u32, u32, Vec<Target>)>,
}

/// A fusion strategy.
pub trait FusionEngine: Send + Sync {
    fn name(&self) -> &'static str;

    /// Builds the projectors for `left` and `right` (`left` is the row
    /// operand).
    fn setup(
        &self,
        cache: &DefectCache,
        left: &Defect,
        right: &Defect,
        p: PrimeModulus,
    ) -> Result<FusionSetup>;

    /// Fuses `left` with `right`: multiplicities are projector traces.
    fn fuse(
        &self,
        cache: &DefectCache,
        left: &Defect,
        right: &Defect,
        p: PrimeModulus,
    ) -> Result<FusionOutcome> {
        let setup = self.setup(cache, left, right, p)?;
        let mut components = Vec::new();
        for (mu, nu, targets) in setup.components {
            let mut terms = Vec::new();
            for (defect, proj) in targets {
                let n = proj.multiplicity()?;
                if n > 0 {
                    terms.push(FusionTerm {
                        defect,
                        multiplicity: n,
                    });
                }
            }
            components.push(FusionComponent { mu, nu, terms });
        }
        Ok(FusionOutcome {
            mode: self.name().to_string(),
            left: left.clone(),
            right: right.clone(),
            bottom: setup.bottom,
            top: setup.top,
            components,
        })
    }
}

/// Side-by-side fusion; walls fuse as `left (x) right`.
#[derive(Clone, Debug)]
pub struct HorizontalEngine {
    pub inflations: InflationTable,
}

impl Default for HorizontalEngine {
    fn default() -> Self {
        HorizontalEngine {
            inflations: InflationTable::standard().clone(),
        }
    }
}

impl FusionEngine for HorizontalEngine {
    fn name(&self) -> &'static str {
        "horizontal"
    }

    fn setup(
        &self,
        cache: &DefectCache,
        left: &Defect,
        right: &Defect,
        p: PrimeModulus,
    ) -> Result<FusionSetup> {
        let a = cache.find(left, p)?;
        let b = cache.find(right, p)?;
        let lower = wall_fuse(left.bottom, right.bottom, p);
        let upper = wall_fuse(left.top, right.top, p);
        let walls4 = [left.bottom, right.bottom, left.top, right.top];
        let range = |m: u32| {
            if m > 1 {
                (0..p.get()).collect::<Vec<_>>()
            } else {
                vec![0]
            }
        };
        let targets = cache.defects(lower.wall, upper.wall, p)?;
        let mut components = Vec::new();
        for mu in range(lower.multiplicity) {
            for nu in range(upper.multiplicity) {
                let mut list = Vec::new();
                for target in targets.iter() {
                    let waist = self
                        .inflations
                        .inflate(&target.idempotent, walls4, mu, nu)?;
                    let proj = Projector::horizontal(
                        walls4,
                        a.idempotent.clone(),
                        b.idempotent.clone(),
                        &waist,
                    );
                    list.push((target.defect.clone(), proj));
                }
                components.push((mu, nu, list));
            }
        }
        Ok(FusionSetup {
            bottom: lower.wall,
            top: upper.wall,
            components,
        })
    }
}

/// Composition of `left` (below) with `right` (above); requires the top wall
/// of `left` to equal the bottom wall of `right`.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerticalEngine;

impl FusionEngine for VerticalEngine {
    fn name(&self) -> &'static str {
        "vertical"
    }

    fn setup(
        &self,
        cache: &DefectCache,
        left: &Defect,
        right: &Defect,
        p: PrimeModulus,
    ) -> Result<FusionSetup> {
        if left.top != right.bottom {
            return Err(Error::NotComposable(left.to_string(), right.to_string()));
        }
        let a = cache.find(left, p)?;
        let b = cache.find(right, p)?;
        let walls = [left.bottom, left.top, right.top];
        let list = cache
            .defects(left.bottom, right.top, p)?
            .iter()
            .map(|t| {
                let proj = Projector::vertical(
                    walls,
                    a.idempotent.clone(),
                    b.idempotent.clone(),
                    &t.idempotent,
                );
                (t.defect.clone(), proj)
            })
            .collect();
        Ok(FusionSetup {
            bottom: left.bottom,
            top: right.top,
            components: vec![(0, 0, list)],
        })
    }
}

/// Looks up an engine by name (`h`/`horizontal`, `v`/`vertical`).
pub fn engine(name: &str) -> Result<Box<dyn FusionEngine>> {
    match name {
        "h" | "horizontal" => Ok(Box::new(HorizontalEngine::default())),
        "v" | "vertical" => Ok(Box::new(VerticalEngine)),
        other => Err(Error::UnknownMode(other.to_string())),
    }
}

/// Fuses every pair (in parallel); outcomes come back in pair order.
pub fn fuse_all(
    engine: &dyn FusionEngine,
    cache: &DefectCache,
    pairs: &[(Defect, Defect)],
    p: PrimeModulus,
) -> Result<Vec<FusionOutcome>> {
    pairs
        .par_iter()
        .map(|(a, b)| engine.fuse(cache, a, b, p))
        .collect()
}

/// An exact basis of the multiplicity space of `target` in component
/// `component = (mu, nu)` of `left` fused with `right`: the image of the
/// projector, as explicit pants vectors.  Every basis vector is a fixed
/// point of the projector.  Empty if `target` does not occur.
pub fn pants_basis(
    engine: &dyn FusionEngine,
    cache: &DefectCache,
    left: &Defect,
    right: &Defect,
    target: &Defect,
    component: (u32, u32),
    p: PrimeModulus,
) -> Result<Vec<SparseVec<PantsKey>>> {
    let setup = engine.setup(cache, left, right, p)?;
    Ok(setup
        .components
        .into_iter()
        .filter(|(mu, nu, _)| (*mu, *nu) == component)
        .flat_map(|(_, _, targets)| targets)
        .filter(|(d, _)| d == target)
        .flat_map(|(_, proj)| proj.image().basis().cloned().collect::<Vec<_>>())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(p: u32) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn d(s: &str) -> Defect {
        s.parse().unwrap()
    }

    #[test]
    fn engine_lookup() {
        assert_eq!(engine("h").unwrap().name(), "horizontal");
        assert_eq!(engine("vertical").unwrap().name(), "vertical");
        assert_eq!(engine("x").err(), Some(Error::UnknownMode("x".into())));
    }

    #[test]
    fn vertical_requires_shared_wall() {
        let cache = DefectCache::new();
        let e = VerticalEngine.fuse(&cache, &d("T/L"), &d("R/T"), pm(2));
        assert!(matches!(e, Err(Error::NotComposable(..))));
    }

    #[test]
    fn multiplicity_one_basis_is_a_singleton() {
        let cache = DefectCache::new();
        let (a, b) = (d("X:1/X:1:1,0"), d("X:1/X:1:0,1"));
        let basis = pants_basis(
            &HorizontalEngine::default(),
            &cache,
            &a,
            &b,
            &d("X:1/X:1:1,1"),
            (0, 0),
            pm(2),
        )
        .unwrap();
        assert_eq!(basis.len(), 1);
        let absent = pants_basis(
            &HorizontalEngine::default(),
            &cache,
            &a,
            &b,
            &d("X:1/X:1:0,0"),
            (0, 0),
            pm(2),
        )
        .unwrap();
        assert!(absent.is_empty());
    }

    #[test]
    fn vacuum_is_neutral_vertically() {
        let cache = DefectCache::new();
        let v = d("X:1/X:1:0,0");
        let o = VerticalEngine.fuse(&cache, &v, &v, pm(3)).unwrap();
        assert_eq!(
            o.components[0].terms,
            vec![FusionTerm {
                defect: v,
                multiplicity: 1
            }]
        );
    }
}
