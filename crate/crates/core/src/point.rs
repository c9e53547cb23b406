//! Exactly comparable points of ℝ: rationals and quadratic surds p + c·√d.
//!
//! Restricting irrational points to quadratic surds keeps every order
//! comparison decidable with integer arithmetic: a surd against a rational
//! reduces to one sign test of A + B√d, and two surds over different radicands
//! reduce to at most two such tests after squaring.

use crate::rational::{fmt_rat, rat_int, ExtRat, Rat};
use num::bigint::BigInt;
use num::integer::Roots;
use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A point of ℝ with exactly decidable order against rationals and other
/// points. `Surd` values are irrational by construction: `d` is square-free,
/// `d > 1`, and `c != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Rational(
        #[serde(
            serialize_with = "crate::rational::serialize_rat",
            deserialize_with = "crate::rational::deserialize_rat"
        )]
        Rat,
    ),
    Surd {
        #[serde(
            serialize_with = "crate::rational::serialize_rat",
            deserialize_with = "crate::rational::deserialize_rat"
        )]
        p: Rat,
        #[serde(
            serialize_with = "crate::rational::serialize_rat",
            deserialize_with = "crate::rational::deserialize_rat"
        )]
        c: Rat,
        d: u64,
    },
}

/// Splits `d` into `s^2 * f` with `f` square-free; returns `(s, f)`.
fn square_free_split(d: u64) -> (u64, u64) {
    let mut f = d;
    let mut s: u64 = 1;
    let mut q: u64 = 2;
    while q.checked_mul(q).is_some_and(|qq| qq <= f) {
        let qq = q * q;
        while f.is_multiple_of(qq) {
            f /= qq;
            s *= q;
        }
        q += 1;
    }
    (s, f)
}

impl Point {
    pub fn rational(r: Rat) -> Self {
        Point::Rational(r)
    }

    pub fn from_int(n: i64) -> Self {
        Point::Rational(rat_int(n))
    }

    /// Builds `p + c*sqrt(d)`, normalizing the radicand to square-free form.
    /// Collapses to a rational when the irrational part vanishes
    /// (`c == 0`, `d == 0`, or `d` a perfect square).
    pub fn surd(p: Rat, c: Rat, d: u64) -> Self {
        if c.is_zero() || d == 0 {
            return Point::Rational(p);
        }
        let (s, f) = square_free_split(d);
        let scaled = c * BigRational::from_integer(BigInt::from(s));
        if f <= 1 {
            Point::Rational(p + scaled)
        } else {
            Point::Surd { p, c: scaled, d: f }
        }
    }

    pub fn sqrt(d: u64) -> Self {
        Point::surd(Rat::zero(), Rat::one(), d)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Point::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Point::Rational(r) => Some(r),
            Point::Surd { .. } => None,
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        match self {
            Point::Rational(q) => q.cmp(r),
            Point::Surd { p, c, d } => sign_a_plus_b_sqrt_d(&(p - r), c, *d),
        }
    }

    /// Exact comparison against an extended rational (interval endpoint).
    pub fn cmp_ext(&self, e: &ExtRat) -> Ordering {
        match e {
            ExtRat::NegInf => Ordering::Greater,
            ExtRat::PosInf => Ordering::Less,
            ExtRat::Finite(r) => self.cmp_rat(r),
        }
    }

    /// Largest integer `n` with `n <= self`.
    pub fn floor_int(&self) -> BigInt {
        match self {
            Point::Rational(r) => r.floor().to_integer(),
            Point::Surd { p, c, d } => {
                // sqrt(d) lies strictly between isqrt(d) and isqrt(d)+1
                // because square-free d > 1 is never a perfect square.
                let k = BigInt::from(d.sqrt());
                let lo_side = p + c * BigRational::from_integer(k.clone());
                let hi_side = p + c * BigRational::from_integer(k + 1);
                let (a, b) = if c.is_positive() {
                    (lo_side, hi_side)
                } else {
                    (hi_side, lo_side)
                };
                let mut lo = a.floor().to_integer();
                let mut hi = b.floor().to_integer() + 1;
                // binary search: largest n <= value
                while lo < hi {
                    let mid: BigInt = (&lo + &hi + 1) / 2;
                    let m = BigRational::from_integer(mid.clone());
                    if self.cmp_rat(&m) != Ordering::Less {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                lo
            }
        }
    }

    fn add_rat(&self, r: &Rat) -> Point {
        match self {
            Point::Rational(q) => Point::Rational(q + r),
            Point::Surd { p, c, d } => Point::Surd {
                p: p + r,
                c: c.clone(),
                d: *d,
            },
        }
    }

    /// Reciprocal of a nonzero point; surds stay surds over the same radicand
    /// after rationalizing the denominator.
    fn recip(&self) -> Point {
        match self {
            Point::Rational(r) => {
                assert!(!r.is_zero(), "reciprocal of zero");
                Point::Rational(r.recip())
            }
            Point::Surd { p, c, d } => {
                // 1/(p + c sqrt d) = (p - c sqrt d) / (p^2 - c^2 d)
                let dd = BigRational::from_integer(BigInt::from(*d));
                let denom = p * p - c * c * dd;
                Point::Surd {
                    p: p / &denom,
                    c: -(c / &denom),
                    d: *d,
                }
            }
        }
    }
}

/// Sign of `A + B*sqrt(d)` for square-free `d > 1`, as an ordering vs zero.
fn sign_a_plus_b_sqrt_d(a: &Rat, b: &Rat, d: u64) -> Ordering {
    if b.is_zero() {
        return a.cmp(&Rat::zero());
    }
    let dd = BigRational::from_integer(BigInt::from(d));
    match (a.is_negative(), b.is_negative()) {
        (false, false) => Ordering::Greater, // a >= 0, b > 0
        (true, true) => Ordering::Less,
        (false, true) => {
            // a >= 0 > b: sign of a^2 - b^2 d (never equal for valid surds)
            (a * a).cmp(&(b * b * dd))
        }
        (true, false) => (b * b * dd).cmp(&(a * a)),
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Point::Rational(a), Point::Rational(b)) => a.cmp(b),
            (Point::Rational(r), s @ Point::Surd { .. }) => s.cmp_rat(r).reverse(),
            (s @ Point::Surd { .. }, Point::Rational(r)) => s.cmp_rat(r),
            (
                Point::Surd {
                    p: p1,
                    c: c1,
                    d: d1,
                },
                Point::Surd {
                    p: p2,
                    c: c2,
                    d: d2,
                },
            ) => {
                if d1 == d2 {
                    return sign_a_plus_b_sqrt_d(&(p1 - p2), &(c1 - c2), *d1);
                }
                // x = (p1-p2) + c1 sqrt(d1)  vs  y = c2 sqrt(d2)
                let a = p1 - p2;
                let sx = sign_a_plus_b_sqrt_d(&a, c1, *d1);
                let sy = c2.cmp(&Rat::zero());
                if sx != sy {
                    return sx.cmp(&sy);
                }
                // same nonzero sign: compare squares
                // x^2 = a^2 + c1^2 d1 + 2 a c1 sqrt(d1), y^2 = c2^2 d2
                let dd1 = BigRational::from_integer(BigInt::from(*d1));
                let dd2 = BigRational::from_integer(BigInt::from(*d2));
                let x2_rat = &a * &a + c1 * c1 * dd1;
                let y2 = c2 * c2 * dd2;
                let sq = sign_a_plus_b_sqrt_d(
                    &(x2_rat - y2),
                    &(BigRational::from_integer(BigInt::from(2)) * a * c1),
                    *d1,
                );
                match sx {
                    Ordering::Greater => sq,
                    Ordering::Less => sq.reverse(),
                    Ordering::Equal => unreachable!("surd values are never zero"),
                }
            }
        }
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Rational(r) => write!(f, "{}", fmt_rat(r)),
            Point::Surd { p, c, d } => {
                if !p.is_zero() {
                    write!(f, "{} ", fmt_rat(p))?;
                    write!(f, "{} ", if c.is_negative() { "-" } else { "+" })?;
                } else if c.is_negative() {
                    write!(f, "-")?;
                }
                let mag = c.abs();
                if !mag.is_one() {
                    write!(f, "{}*", fmt_rat(&mag))?;
                }
                write!(f, "sqrt({d})")
            }
        }
    }
}

/// Simplest-rational search: returns a rational strictly between `a` and `b`
/// by walking the shared continued-fraction prefix of the two bounds.
/// Pre: `a < b`.
pub fn rational_strictly_between(a: &Point, b: &Point) -> Rat {
    assert_eq!(a.cmp(b), Ordering::Less, "need a < b");
    let fa = a.floor_int();
    let next = BigRational::from_integer(fa.clone() + 1);
    if b.cmp_rat(&next) == Ordering::Greater {
        return next;
    }
    let fa_rat = BigRational::from_integer(fa);
    let x = a.add_rat(&-fa_rat.clone()); // in [0, 1)
    let y = b.add_rat(&-fa_rat.clone()); // in (0, 1]
    if x.cmp_rat(&Rat::zero()) == Ordering::Equal {
        // any s > 1/y works; pick the smallest integer
        let s = y.recip().floor_int() + 1;
        return fa_rat + BigRational::new(BigInt::one(), s);
    }
    let inner = rational_strictly_between(&y.recip(), &x.recip());
    fa_rat + inner.recip()
}

/// Some irrational point strictly inside `(a, b)`. Pre: `a < b`.
pub fn irrational_strictly_between(a: &Point, b: &Point) -> Point {
    let m = rational_strictly_between(a, b);
    let m_pt = Point::Rational(m.clone());
    let m2 = rational_strictly_between(&m_pt, b);
    // c*sqrt(2) < 2c <= gap/2, so m + c*sqrt(2) stays below m2
    let gap = m2 - &m;
    let c = gap / rat_int(4);
    Point::Surd { p: m, c, d: 2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sqrt2() -> Point {
        Point::sqrt(2)
    }

    #[test]
    fn surd_normalization() {
        assert_eq!(Point::sqrt(4), Point::from_int(2));
        assert_eq!(Point::sqrt(1), Point::from_int(1));
        assert_eq!(Point::sqrt(0), Point::from_int(0));
        assert_eq!(
            Point::sqrt(8),
            Point::Surd {
                p: Rat::zero(),
                c: rat_int(2),
                d: 2
            }
        );
        assert_eq!(Point::surd(rat_int(1), rat_int(3), 36), Point::from_int(19));
        assert_eq!(
            Point::surd(rat_int(0), rat(1, 2), 12),
            Point::Surd {
                p: Rat::zero(),
                c: rat_int(1),
                d: 3
            }
        );
    }

    #[test]
    fn surd_vs_rational_order() {
        assert_eq!(sqrt2().cmp_rat(&rat(3, 2)), Ordering::Less);
        assert_eq!(sqrt2().cmp_rat(&rat(7, 5)), Ordering::Greater);
        assert_eq!(
            sqrt2().cmp_rat(&rat(141421356, 100000000)),
            Ordering::Greater
        );
        assert_eq!(sqrt2().cmp_rat(&rat(141421357, 100000000)), Ordering::Less);
        let neg = Point::surd(Rat::zero(), rat_int(-1), 2);
        assert_eq!(neg.cmp_rat(&rat(-3, 2)), Ordering::Greater);
        assert_eq!(neg.cmp_rat(&rat(-7, 5)), Ordering::Less);
    }

    #[test]
    fn cross_radicand_order() {
        let s2 = Point::sqrt(2);
        let s3 = Point::sqrt(3);
        let s6 = Point::sqrt(6);
        assert!(s2 < s3);
        assert!(s3 < s6);
        // 1 + sqrt(2) ~ 2.414 < sqrt(6) ~ 2.449
        let one_plus_s2 = Point::surd(rat_int(1), rat_int(1), 2);
        assert!(one_plus_s2 < s6);
        // 2 + sqrt(3) ~ 3.732 > sqrt(13) ~ 3.606
        let a = Point::surd(rat_int(2), rat_int(1), 3);
        assert!(a > Point::sqrt(13));
        // equality through normalization: 2*sqrt(2) == sqrt(8)
        assert_eq!(
            Point::sqrt(8).cmp(&Point::surd(Rat::zero(), rat_int(2), 2)),
            Ordering::Equal
        );
    }

    #[test]
    fn floor_of_surds() {
        assert_eq!(sqrt2().floor_int(), BigInt::from(1));
        assert_eq!(Point::sqrt(99).floor_int(), BigInt::from(9));
        let neg = Point::surd(Rat::zero(), rat_int(-1), 2);
        assert_eq!(neg.floor_int(), BigInt::from(-2));
        let v = Point::surd(rat(1, 2), rat(-3, 7), 5); // 0.5 - 0.958... ~ -0.458
        assert_eq!(v.floor_int(), BigInt::from(-1));
        assert_eq!(Point::Rational(rat(-7, 2)).floor_int(), BigInt::from(-4));
    }

    #[test]
    fn between_finds_interior_rationals() {
        let cases = [
            (Point::Rational(rat(0, 1)), Point::Rational(rat(1, 1))),
            (Point::Rational(rat(2, 1)), Point::Rational(rat(3, 1))),
            (Point::sqrt(2), Point::Rational(rat(3, 2))),
            (Point::Rational(rat(7, 5)), Point::sqrt(2)),
            (Point::sqrt(2), Point::sqrt(3)),
            (
                Point::surd(rat_int(0), rat_int(1), 2),
                Point::surd(rat_int(0), rat(101, 100), 2),
            ),
            (Point::Rational(rat(-1, 3)), Point::Rational(rat(-1, 4))),
        ];
        for (a, b) in cases {
            let m = rational_strictly_between(&a, &b);
            assert_eq!(a.cmp_rat(&m), Ordering::Less, "{a} < {m}");
            assert_eq!(b.cmp_rat(&m), Ordering::Greater, "{m} < {b}");
            let ir = irrational_strictly_between(&a, &b);
            assert!(!ir.is_rational());
            assert!(a < ir && ir < b);
        }
    }
}
