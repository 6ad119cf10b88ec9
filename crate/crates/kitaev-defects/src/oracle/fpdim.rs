//! Frobenius–Perron dimensions of defects, in exact `q * sqrt(p)^e` form.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::PrimeModulus;
use crate::fusion::FusionOutcome;
use crate::tubes::Defect;
use crate::walls::Wall;

/// `rational * sqrt(p)^sqrt_p_power` with `sqrt_p_power` in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpDim {
    pub p: u32,
    pub rational: BigRational,
    pub sqrt_p_power: u8,
}

impl FpDim {
    pub fn zero(p: u32) -> Self {
        FpDim {
            p,
            rational: BigRational::zero(),
            sqrt_p_power: 0,
        }
    }

    pub fn integer(p: u32, n: u64) -> Self {
        FpDim {
            p,
            rational: BigRational::from_integer(BigInt::from(n)),
            sqrt_p_power: 0,
        }
    }

    pub fn sqrt_p(p: u32) -> Self {
        FpDim {
            p,
            rational: BigRational::one(),
            sqrt_p_power: 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.rational.is_zero() {
            self.sqrt_p_power = 0;
        }
        self
    }

    /// Sum of two dimensions; `None` if it leaves the form `q * sqrt(p)^e`.
    pub fn checked_add(&self, o: &FpDim) -> Option<FpDim> {
        if self.is_zero() {
            return Some(o.clone());
        }
        if o.is_zero() {
            return Some(self.clone());
        }
        (self.sqrt_p_power == o.sqrt_p_power).then(|| {
            FpDim {
                p: self.p,
                rational: &self.rational + &o.rational,
                sqrt_p_power: self.sqrt_p_power,
            }
            .normalized()
        })
    }

    pub fn scale(&self, n: u32) -> FpDim {
        FpDim {
            p: self.p,
            rational: &self.rational * BigInt::from(n),
            sqrt_p_power: self.sqrt_p_power,
        }
        .normalized()
    }
}

impl Mul for &FpDim {
    type Output = FpDim;

    fn mul(self, o: &FpDim) -> FpDim {
        let mut rational = &self.rational * &o.rational;
        let mut power = self.sqrt_p_power + o.sqrt_p_power;
        if power == 2 {
            rational *= BigInt::from(self.p);
            power = 0;
        }
        FpDim {
            p: self.p,
            rational,
            sqrt_p_power: power,
        }
        .normalized()
    }
}

impl fmt::Display for FpDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sqrt_p_power, self.rational.is_one()) {
            (0, _) => write!(f, "{}", self.rational),
            (_, true) => write!(f, "sqrt(p)"),
            _ => write!(f, "{}*sqrt(p)", self.rational),
        }
    }
}

impl Serialize for FpDim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Dimension of a simple defect: nonzero only between invertible walls.
pub fn fpdim(d: &Defect, p: PrimeModulus) -> FpDim {
    let p = p.get();
    match (d.bottom, d.top) {
        (Wall::X(k), Wall::X(l)) | (Wall::F(k), Wall::F(l)) => {
            FpDim::integer(p, if k == l { 1 } else { p as u64 })
        }
        (Wall::X(_), Wall::F(_)) | (Wall::F(_), Wall::X(_)) => FpDim::sqrt_p(p),
        _ => FpDim::zero(p),
    }
}

/// Checks `d(a) d(b) = sum_c N_ab^c d(c)` over all components of a fusion;
/// returns both sides when they differ.
#[allow(clippy::result_large_err)]
pub fn check_fp_consistency(
    o: &FusionOutcome,
    p: PrimeModulus,
) -> std::result::Result<(), (FpDim, Option<FpDim>)> {
    let lhs = &fpdim(&o.left, p) * &fpdim(&o.right, p);
    let mut rhs = Some(FpDim::zero(p.get()));
    for t in o.components.iter().flat_map(|c| &c.terms) {
        rhs = rhs.and_then(|r| r.checked_add(&fpdim(&t.defect, p).scale(t.multiplicity)));
    }
    if rhs.as_ref() == Some(&lhs) {
        Ok(())
    } else {
        Err((lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_of_invertible_families() {
        let p = PrimeModulus::new(3).unwrap();
        let d = |s: &str| fpdim(&s.parse().unwrap(), p).to_string();
        assert_eq!(d("X:1/X:1:0,0"), "1");
        assert_eq!(d("X:1/X:2"), "3");
        assert_eq!(d("F:1/F:2"), "3");
        assert_eq!(d("X:1/F:1:0"), "sqrt(p)");
        assert_eq!(d("T/T:0,0"), "0");
        let s = FpDim::sqrt_p(3);
        assert_eq!(&s * &s, FpDim::integer(3, 3));
        assert_eq!(s.checked_add(&FpDim::integer(3, 1)), None);
    }
}
