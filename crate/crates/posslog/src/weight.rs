//! Exact rational certainty and possibility degrees in `[0, 1]`.

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// An exact rational in `[0, 1]`, stored in lowest terms.
///
/// Used both for certainty levels of weighted clauses and for possibility
/// degrees of interpretations. Exactness matters: the product encoding
/// produces values like `13/16` and `29/32` that must round-trip bit for bit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight(BigRational);

impl Weight {
    pub fn zero() -> Self {
        Weight(BigRational::zero())
    }

    pub fn one() -> Self {
        Weight(BigRational::one())
    }

    /// Builds `num/den`, checking `den != 0` and `0 <= num/den <= 1`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidWeight(format!("{num}/{den}: zero denominator")));
        }
        Self::from_ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ratio(r: BigRational) -> Result<Self> {
        if r < BigRational::zero() || r > BigRational::one() {
            return Err(Error::InvalidWeight(format!("{r} outside [0,1]")));
        }
        Ok(Weight(r))
    }

    /// Parses `num/den` or a decimal such as `0.7` (read as the exact
    /// rational 7/10).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::InvalidWeight("empty weight".into()));
        }
        if let Some((n, d)) = t.split_once('/') {
            let num: i64 = n
                .trim()
                .parse()
                .map_err(|_| Error::InvalidWeight(format!("bad numerator in `{t}`")))?;
            let den: i64 = d
                .trim()
                .parse()
                .map_err(|_| Error::InvalidWeight(format!("bad denominator in `{t}`")))?;
            return Self::new(num, den);
        }
        if let Some((int, frac)) = t.split_once('.') {
            if !int.chars().all(|c| c.is_ascii_digit())
                || frac.is_empty()
                || !frac.chars().all(|c| c.is_ascii_digit())
            {
                return Err(Error::InvalidWeight(format!("`{t}` is not a number")));
            }
            let digits = format!("{int}{frac}");
            let num: BigInt = digits
                .parse()
                .map_err(|_| Error::InvalidWeight(format!("`{t}` is not a number")))?;
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            return Self::from_ratio(BigRational::new(num, den));
        }
        let num: i64 = t
            .parse()
            .map_err(|_| Error::InvalidWeight(format!("`{t}` is not a number")))?;
        Self::new(num, 1)
    }

    /// `2^-rank`, the kappa-function bridge; `None` (infinite rank) maps to 0.
    pub fn pow2_neg(rank: Option<u64>) -> Self {
        match rank {
            None => Self::zero(),
            Some(r) => Weight(BigRational::new(BigInt::one(), BigInt::one() << r)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        Weight(BigRational::one() - &self.0)
    }

    /// Pointwise product; stays in `[0,1]`.
    pub fn times(&self, other: &Self) -> Self {
        Weight(&self.0 * &other.0)
    }

    /// `self / other`; caller must guarantee `self <= other` and `other > 0`.
    pub fn div_by(&self, other: &Self) -> Self {
        debug_assert!(!other.is_zero() && self <= other);
        Weight(&self.0 / &other.0)
    }

    /// The product-combination weight `a + b - a*b = 1 - (1-a)(1-b)`.
    pub fn cross(&self, other: &Self) -> Self {
        self.complement().times(&other.complement()).complement()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Weight::parse("3/10").unwrap(), Weight::new(3, 10).unwrap());
        assert_eq!(Weight::parse("0.7").unwrap(), Weight::new(7, 10).unwrap());
        assert_eq!(Weight::parse("0.75").unwrap(), Weight::new(3, 4).unwrap());
        assert_eq!(Weight::parse("1").unwrap(), Weight::one());
        assert!(Weight::parse("3/0").is_err());
        assert!(Weight::parse("5/4").is_err());
        assert!(Weight::parse("-1/4").is_err());
        assert!(Weight::parse("x").is_err());
    }

    #[test]
    fn cross_matches_inclusion_exclusion() {
        // a + b - a*b, e.g. 1/4 and 3/4 -> 13/16
        let a = Weight::new(1, 4).unwrap();
        let b = Weight::new(3, 4).unwrap();
        assert_eq!(a.cross(&b), Weight::new(13, 16).unwrap());
    }

    #[test]
    fn display_round_trips() {
        for w in [
            Weight::zero(),
            Weight::one(),
            Weight::new(7, 10).unwrap(),
            Weight::new(29, 32).unwrap(),
        ] {
            assert_eq!(Weight::parse(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn kappa_bridge_degrees() {
        assert_eq!(Weight::pow2_neg(Some(0)), Weight::one());
        assert_eq!(Weight::pow2_neg(Some(3)), Weight::new(1, 8).unwrap());
        assert_eq!(Weight::pow2_neg(None), Weight::zero());
    }
}
