//! Open intervals (lo, hi) with extended-rational endpoints.

use crate::point::Point;
use crate::rational::{rat_int, ExtRat, MeasureValue, Rat};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// The open interval `(lo, hi)`. Empty whenever `lo >= hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: ExtRat,
    pub hi: ExtRat,
}

impl Interval {
    pub fn new(lo: ExtRat, hi: ExtRat) -> Self {
        Interval { lo, hi }
    }

    pub fn rational(lo: Rat, hi: Rat) -> Self {
        Interval {
            lo: ExtRat::Finite(lo),
            hi: ExtRat::Finite(hi),
        }
    }

    pub fn of_ints(lo: i64, hi: i64) -> Self {
        Interval::rational(rat_int(lo), rat_int(hi))
    }

    pub fn full_line() -> Self {
        Interval {
            lo: ExtRat::NegInf,
            hi: ExtRat::PosInf,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        x.cmp_ext(&self.lo) == Ordering::Greater && x.cmp_ext(&self.hi) == Ordering::Less
    }

    pub fn contains_rat(&self, x: &Rat) -> bool {
        self.contains_point(&Point::Rational(x.clone()))
    }

    pub fn length(&self) -> MeasureValue {
        if self.is_empty() {
            MeasureValue::zero()
        } else {
            self.hi.sub_for_length(&self.lo)
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    /// A deterministic rational strictly inside the interval, or `None` when
    /// empty: the midpoint for bounded intervals, a unit step inside from the
    /// finite end otherwise, and 0 for the full line.
    pub fn interior_rational(&self) -> Option<Rat> {
        if self.is_empty() {
            return None;
        }
        Some(match (&self.lo, &self.hi) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => (a + b) / rat_int(2),
            (ExtRat::NegInf, ExtRat::Finite(b)) => b - rat_int(1),
            (ExtRat::Finite(a), ExtRat::PosInf) => a + rat_int(1),
            _ => Rat::zero(),
        })
    }
}

use num::Zero;

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}
