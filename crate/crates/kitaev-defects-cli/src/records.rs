//! Structured output records.  Every record round-trips through JSON;
//! cyclotomic coefficients are `[power, numerator, denominator]` triples in
//! ascending power order.

use anyhow::{anyhow, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use kitaev_defects::arith::{Cyclotomic, PrimeModulus};
use kitaev_defects::fusion::FusionOutcome;
use kitaev_defects::linalg::SparseVec;
use kitaev_defects::oracle::{fpdim, FpDim, VerifyReport};
use kitaev_defects::pants::{Geometry, PantsKey};
use kitaev_defects::tubes::{ClassifiedDefect, Defect};
use kitaev_defects::walls::Wall;

pub type Triples = Vec<(u32, i64, i64)>;

pub fn triples(c: &Cyclotomic) -> Result<Triples> {
    c.triples()
        .into_iter()
        .map(|(i, n, d)| {
            Ok((
                i,
                n.to_i64().ok_or_else(|| anyhow!("numerator overflow"))?,
                d.to_i64().ok_or_else(|| anyhow!("denominator overflow"))?,
            ))
        })
        .collect()
}

/// One term `coefficient * tube` of an idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubeTerm {
    pub bottom: String,
    pub top: String,
    pub g: u32,
    pub h: u32,
    pub coefficient: Triples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectRecord {
    pub defect: Defect,
    pub bottom_object: String,
    pub top_object: String,
    pub fpdim: String,
    pub idempotent: Vec<TubeTerm>,
}

impl DefectRecord {
    pub fn new(c: &ClassifiedDefect, p: PrimeModulus) -> Result<Self> {
        let idempotent = c
            .idempotent
            .terms
            .iter()
            .map(|(t, coef)| {
                Ok(TubeTerm {
                    bottom: t.bottom.to_string(),
                    top: t.top.to_string(),
                    g: t.g,
                    h: t.h,
                    coefficient: triples(coef)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(DefectRecord {
            defect: c.defect.clone(),
            bottom_object: c.bottom_object.to_string(),
            top_object: c.top_object.to_string(),
            fpdim: fpdim(&c.defect, p).to_string(),
            idempotent,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectListing {
    pub p: u32,
    pub bottom: Wall,
    pub top: Wall,
    pub defects: Vec<DefectRecord>,
}

/// One pants diagram with its coefficient in a basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsEntry {
    pub labels: Vec<u32>,
    pub hole1: (String, String),
    pub hole2: (String, String),
    pub coefficient: Triples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub mu: u32,
    pub nu: u32,
    pub target: Defect,
    pub vectors: Vec<Vec<PantsEntry>>,
}

impl BasisRecord {
    pub fn new(
        mu: u32,
        nu: u32,
        target: Defect,
        geometry: Geometry,
        vectors: &[SparseVec<PantsKey>],
    ) -> Result<Self> {
        let len = match geometry {
            Geometry::Horizontal => 5,
            Geometry::Vertical => 4,
        };
        let vectors = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(k, c)| {
                        Ok(PantsEntry {
                            labels: k.labels[..len].to_vec(),
                            hole1: (k.hole1.0.to_string(), k.hole1.1.to_string()),
                            hole2: (k.hole2.0.to_string(), k.hole2.1.to_string()),
                            coefficient: triples(c)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(BasisRecord {
            mu,
            nu,
            target,
            vectors,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuseRecord {
    pub p: u32,
    pub outcome: FusionOutcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisRecord>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesRecord {
    pub p: u32,
    pub mode: String,
    pub outcomes: Vec<FusionOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub p: u32,
    pub scope: String,
    pub seed: u64,
    pub passed: bool,
    pub reports: Vec<VerifyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpDimRecord {
    pub p: u32,
    pub defect: Defect,
    pub fpdim: String,
    /// `fpdim = rational * sqrt(p)^sqrt_p_power`, rational as `n/d`.
    pub rational: String,
    pub sqrt_p_power: u8,
}

impl FpDimRecord {
    pub fn new(defect: Defect, d: &FpDim) -> Self {
        FpDimRecord {
            p: d.p,
            defect,
            fpdim: d.to_string(),
            rational: d.rational.to_string(),
            sqrt_p_power: d.sqrt_p_power,
        }
    }
}
