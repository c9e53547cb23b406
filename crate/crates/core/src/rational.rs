//! Exact rational scalars and the extended line ℚ ∪ {−∞, +∞}.
//!
//! Everything downstream (interval endpoints, measures, length sequences)
//! is built on `num::BigRational`, so there is no floating point anywhere
//! in the crate.

use num::bigint::{BigInt, Sign};
use num::{BigRational, One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// Builds `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer rational `n`.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact `2^k` for `k >= 0`.
pub fn pow2(k: u32) -> BigInt {
    BigInt::one() << (k as usize)
}

/// Exact `2^{-k}` as a rational.
pub fn inv_pow2(k: u32) -> Rat {
    BigRational::new(BigInt::one(), pow2(k))
}

/// Renders a rational as `p/q`, or just `p` when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational extended with the two infinities, totally ordered as
/// −∞ < q < +∞ for every rational q. Interval endpoints live here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl ExtRat {
    pub fn finite(r: Rat) -> Self {
        ExtRat::Finite(r)
    }

    pub fn from_int(n: i64) -> Self {
        ExtRat::Finite(rat_int(n))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    /// Difference `self - other`, defined whenever the result is not ∞ − ∞.
    /// Used for interval lengths, so mixed infinite cases yield +∞.
    pub fn sub_for_length(&self, other: &ExtRat) -> MeasureValue {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => MeasureValue::Finite(a - b),
            _ => MeasureValue::Infinite,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRat::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::Finite(r) => write!(f, "{}", fmt_rat(r)),
            ExtRat::PosInf => write!(f, "inf"),
        }
    }
}

/// A nonnegative measure: an exact rational or +∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureValue {
    Finite(Rat),
    Infinite,
}

impl MeasureValue {
    pub fn zero() -> Self {
        MeasureValue::Finite(Rat::zero())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            MeasureValue::Finite(r) => r.is_positive(),
            MeasureValue::Infinite => true,
        }
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            MeasureValue::Finite(r) => Some(r),
            MeasureValue::Infinite => None,
        }
    }

    pub fn add(&self, other: &MeasureValue) -> MeasureValue {
        match (self, other) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => MeasureValue::Finite(a + b),
            _ => MeasureValue::Infinite,
        }
    }

    /// Saturating subtraction: measures never go below zero.
    pub fn sub_clamped(&self, other: &MeasureValue) -> MeasureValue {
        match (self, other) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => {
                let d = a - b;
                if d.is_negative() {
                    MeasureValue::zero()
                } else {
                    MeasureValue::Finite(d)
                }
            }
            (MeasureValue::Infinite, _) => MeasureValue::Infinite,
            // finite minus infinite: clamp at zero
            (MeasureValue::Finite(_), MeasureValue::Infinite) => MeasureValue::zero(),
        }
    }

    pub fn min(self, other: MeasureValue) -> MeasureValue {
        match (&self, &other) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => {
                if a <= b {
                    self
                } else {
                    other
                }
            }
            (MeasureValue::Infinite, _) => other,
            (_, MeasureValue::Infinite) => self,
        }
    }
}

impl PartialOrd for MeasureValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MeasureValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => a.cmp(b),
            (MeasureValue::Finite(_), MeasureValue::Infinite) => Ordering::Less,
            (MeasureValue::Infinite, MeasureValue::Finite(_)) => Ordering::Greater,
            (MeasureValue::Infinite, MeasureValue::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValue::Finite(r) => write!(f, "{}", fmt_rat(r)),
            MeasureValue::Infinite => write!(f, "inf"),
        }
    }
}

// Rationals cross the JSON boundary as {"num": "...", "den": "..."} string
// pairs so arbitrary precision survives serialization.

pub(crate) fn serialize_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rat", 2)?;
    st.serialize_field("num", &r.numer().to_string())?;
    st.serialize_field("den", &r.denom().to_string())?;
    st.end()
}

pub(crate) fn deserialize_rat<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
    #[derive(Deserialize)]
    struct Pair {
        num: String,
        den: String,
    }
    let p = Pair::deserialize(d)?;
    let num: BigInt = p.num.parse().map_err(serde::de::Error::custom)?;
    let den: BigInt = p.den.parse().map_err(serde::de::Error::custom)?;
    if den.sign() == Sign::NoSign {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtRatRepr {
    Symbol(String),
    Finite { num: String, den: String },
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtRat::NegInf => s.serialize_str("-inf"),
            ExtRat::PosInf => s.serialize_str("inf"),
            ExtRat::Finite(r) => serialize_rat(r, s),
        }
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ExtRatRepr::deserialize(d)? {
            ExtRatRepr::Symbol(sym) => match sym.as_str() {
                "inf" => Ok(ExtRat::PosInf),
                "-inf" => Ok(ExtRat::NegInf),
                other => Err(serde::de::Error::custom(format!(
                    "unknown extended-rational symbol {other:?}"
                ))),
            },
            ExtRatRepr::Finite { num, den } => {
                let num: BigInt = num.parse().map_err(serde::de::Error::custom)?;
                let den: BigInt = den.parse().map_err(serde::de::Error::custom)?;
                if den.sign() == Sign::NoSign {
                    return Err(serde::de::Error::custom("zero denominator"));
                }
                Ok(ExtRat::Finite(BigRational::new(num, den)))
            }
        }
    }
}

impl Serialize for MeasureValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MeasureValue::Infinite => s.serialize_str("inf"),
            MeasureValue::Finite(r) => serialize_rat(r, s),
        }
    }
}

impl<'de> Deserialize<'de> for MeasureValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ExtRat::deserialize(d)? {
            ExtRat::PosInf => Ok(MeasureValue::Infinite),
            ExtRat::Finite(r) => Ok(MeasureValue::Finite(r)),
            ExtRat::NegInf => Err(serde::de::Error::custom("measure cannot be -inf")),
        }
    }
}
