//! Symbolic subsets of ℝ and their exact three-valued semantics.
//!
//! A `SetExpr` is a finite tree; `Family` nodes are the only source of
//! infinitely many constituent sets and the only source of `Unknown`
//! membership verdicts. `In`/`Out` answers are always exact truths about the
//! full, untruncated set.

use crate::enumeration::{self, EnumerationScheme, LengthRule};
use crate::interval::Interval;
use crate::membership::Membership;
use crate::point::Point;
use crate::rational::{fmt_rat, rat_int, ExtRat, Rat};
use num::bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

/// A countable family of open intervals: the i-th member is the interval of
/// length `lengths(i)` centered at `enumeration(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub enumeration: EnumerationScheme,
    pub lengths: LengthRule,
    pub shape: FamilyShape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyShape {
    #[serde(rename = "centered-interval")]
    CenteredInterval,
}

impl FamilyDescriptor {
    /// U_i = (q_i - s_i/2, q_i + s_i/2), the open interval of length s_i
    /// about q_i.
    pub fn member_interval(&self, i: u32) -> Interval {
        let q = enumeration::nth_rational_u32(i);
        let half = self.lengths.length(i) / rat_int(2);
        Interval::rational(&q - &half, q + half)
    }

    /// The first `n` member intervals.
    pub fn truncated(&self, n: u32) -> Vec<Interval> {
        (1..=n).map(|i| self.member_interval(i)).collect()
    }

    pub fn total(&self) -> Rat {
        self.lengths.total()
    }

    pub fn id_string(&self) -> String {
        format!("paperU(a={})", fmt_rat(&self.total()))
    }

    /// Membership is one-sided: rationals are in by construction (each q is
    /// the center of the member it indexes), an irrational is In when one of
    /// the first `n` members contains it, and otherwise Unknown — exclusion
    /// from the untruncated union is not certifiable from a finite prefix.
    pub fn member(&self, x: &Point, n: u32) -> Membership {
        match x {
            Point::Rational(_) => Membership::In,
            Point::Surd { .. } => {
                for i in 1..=n {
                    if self.member_interval(i).contains_point(x) {
                        return Membership::In;
                    }
                }
                Membership::Unknown
            }
        }
    }

    /// Index of the member interval that contains the rational `q` by
    /// construction.
    pub fn covering_index(&self, q: &Rat) -> BigUint {
        enumeration::index_of(q)
    }
}

/// Symbolic subset of ℝ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetExpr {
    Empty,
    Full,
    Ival(Interval),
    Single(Point),
    Rationals,
    Irrationals,
    FiniteUnion(Vec<SetExpr>),
    Intersection(Vec<SetExpr>),
    Complement(Box<SetExpr>),
    Family(FamilyDescriptor),
}

impl SetExpr {
    pub fn interval(lo: ExtRat, hi: ExtRat) -> SetExpr {
        SetExpr::Ival(Interval::new(lo, hi))
    }

    pub fn node_name(&self) -> &'static str {
        match self {
            SetExpr::Empty => "empty",
            SetExpr::Full => "RR",
            SetExpr::Ival(_) => "interval",
            SetExpr::Single(_) => "singleton",
            SetExpr::Rationals => "QQ",
            SetExpr::Irrationals => "II",
            SetExpr::FiniteUnion(_) => "union",
            SetExpr::Intersection(_) => "intersection",
            SetExpr::Complement(_) => "complement",
            SetExpr::Family(_) => "family",
        }
    }
}

/// Union constructor with absorption and flattening. Membership on the result
/// matches the Kleene disjunction of memberships on the inputs.
pub fn union(a: SetExpr, b: SetExpr) -> SetExpr {
    match (a, b) {
        (SetExpr::Empty, x) | (x, SetExpr::Empty) => x,
        (SetExpr::Full, _) | (_, SetExpr::Full) => SetExpr::Full,
        (SetExpr::FiniteUnion(mut xs), SetExpr::FiniteUnion(ys)) => {
            xs.extend(ys);
            SetExpr::FiniteUnion(xs)
        }
        (SetExpr::FiniteUnion(mut xs), y) => {
            xs.push(y);
            SetExpr::FiniteUnion(xs)
        }
        (x, SetExpr::FiniteUnion(mut ys)) => {
            ys.insert(0, x);
            SetExpr::FiniteUnion(ys)
        }
        (x, y) => SetExpr::FiniteUnion(vec![x, y]),
    }
}

/// Intersection constructor with absorption and flattening.
pub fn intersect(a: SetExpr, b: SetExpr) -> SetExpr {
    match (a, b) {
        (SetExpr::Empty, _) | (_, SetExpr::Empty) => SetExpr::Empty,
        (SetExpr::Full, x) | (x, SetExpr::Full) => x,
        (SetExpr::Intersection(mut xs), SetExpr::Intersection(ys)) => {
            xs.extend(ys);
            SetExpr::Intersection(xs)
        }
        (SetExpr::Intersection(mut xs), y) => {
            xs.push(y);
            SetExpr::Intersection(xs)
        }
        (x, SetExpr::Intersection(mut ys)) => {
            ys.insert(0, x);
            SetExpr::Intersection(ys)
        }
        (x, y) => SetExpr::Intersection(vec![x, y]),
    }
}

/// Complement constructor: eliminates double complements and maps the
/// ℚ/ℝ∖ℚ primitives onto each other.
pub fn complement(a: SetExpr) -> SetExpr {
    match a {
        SetExpr::Empty => SetExpr::Full,
        SetExpr::Full => SetExpr::Empty,
        SetExpr::Rationals => SetExpr::Irrationals,
        SetExpr::Irrationals => SetExpr::Rationals,
        SetExpr::Complement(inner) => *inner,
        other => SetExpr::Complement(Box::new(other)),
    }
}

/// Three-valued membership of `x` in `s`, inspecting at most the first `n`
/// members of each family. Monotone in `n`: In/Out never flip, Unknown may
/// resolve.
pub fn member(x: &Point, s: &SetExpr, n: u32) -> Membership {
    match s {
        SetExpr::Empty => Membership::Out,
        SetExpr::Full => Membership::In,
        SetExpr::Ival(iv) => Membership::from_bool(iv.contains_point(x)),
        SetExpr::Single(p) => Membership::from_bool(p == x || p.cmp(x) == Ordering::Equal),
        SetExpr::Rationals => Membership::from_bool(x.is_rational()),
        SetExpr::Irrationals => Membership::from_bool(!x.is_rational()),
        SetExpr::FiniteUnion(parts) => parts
            .iter()
            .fold(Membership::Out, |acc, p| acc.or(member(x, p, n))),
        SetExpr::Intersection(parts) => parts
            .iter()
            .fold(Membership::In, |acc, p| acc.and(member(x, p, n))),
        SetExpr::Complement(inner) => member(x, inner, n).not(),
        SetExpr::Family(fd) => fd.member(x, n),
    }
}

/// Sound syntactic check: `true` implies s ∩ ℚ = ∅.
pub fn contains_no_rationals(s: &SetExpr) -> bool {
    match s {
        SetExpr::Empty | SetExpr::Irrationals => true,
        SetExpr::Single(p) => !p.is_rational(),
        SetExpr::Ival(iv) => iv.is_empty(),
        SetExpr::Full | SetExpr::Rationals | SetExpr::Family(_) => false,
        SetExpr::FiniteUnion(parts) => parts.iter().all(contains_no_rationals),
        SetExpr::Intersection(parts) => parts.iter().any(contains_no_rationals),
        SetExpr::Complement(inner) => contains_all_rationals(inner),
    }
}

/// Sound syntactic check: `true` implies ℚ ⊆ s. Families qualify by
/// construction: every rational is the center of the member it indexes.
pub fn contains_all_rationals(s: &SetExpr) -> bool {
    match s {
        SetExpr::Full | SetExpr::Rationals | SetExpr::Family(_) => true,
        SetExpr::Ival(iv) => iv.lo == ExtRat::NegInf && iv.hi == ExtRat::PosInf,
        SetExpr::FiniteUnion(parts) => parts.iter().any(contains_all_rationals),
        SetExpr::Intersection(parts) => parts.iter().all(contains_all_rationals),
        SetExpr::Complement(inner) => contains_no_rationals(inner),
        _ => false,
    }
}

/// Sorted list of pairwise-disjoint nonempty open intervals plus isolated
/// points lying in none of them: the canonical form produced by the
/// maximal-interval decomposition. Abutting open intervals such as (0,1) and
/// (1,2) stay separate because their union genuinely excludes the shared
/// endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalIntervalSet {
    pub intervals: Vec<Interval>,
    pub points: Vec<Point>,
}

impl CanonicalIntervalSet {
    pub fn empty() -> Self {
        CanonicalIntervalSet {
            intervals: Vec::new(),
            points: Vec::new(),
        }
    }

    /// Canonicalizes intervals and attaches the points not already covered.
    pub fn new(intervals: Vec<Interval>, mut points: Vec<Point>) -> Self {
        let mut c = normalize(&intervals);
        points.sort();
        points.dedup();
        points.retain(|p| !c.intervals.iter().any(|iv| iv.contains_point(p)));
        c.points = points;
        c
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.points.is_empty()
    }

    pub fn contains_point(&self, x: &Point) -> bool {
        let idx = self
            .intervals
            .partition_point(|iv| x.cmp_ext(&iv.lo) == Ordering::Greater);
        if idx > 0 && self.intervals[idx - 1].contains_point(x) {
            return true;
        }
        self.points.binary_search(x).is_ok()
    }

    /// Intersection with an open window interval.
    pub fn intersect_window(&self, window: &Interval) -> CanonicalIntervalSet {
        let intervals = self
            .intervals
            .iter()
            .map(|iv| iv.intersect(window))
            .filter(|iv| !iv.is_empty())
            .collect();
        let points = self
            .points
            .iter()
            .filter(|p| window.contains_point(p))
            .cloned()
            .collect();
        CanonicalIntervalSet { intervals, points }
    }

    /// The union rendered back as a `SetExpr`.
    pub fn to_set_expr(&self) -> SetExpr {
        let mut parts: Vec<SetExpr> = self
            .intervals
            .iter()
            .map(|iv| SetExpr::Ival(iv.clone()))
            .collect();
        parts.extend(self.points.iter().map(|p| SetExpr::Single(p.clone())));
        match parts.len() {
            0 => SetExpr::Empty,
            1 => parts.pop().unwrap(),
            _ => SetExpr::FiniteUnion(parts),
        }
    }
}

/// Merges a list of open intervals into sorted, pairwise-disjoint, maximal
/// form. Empty inputs vanish; abutting intervals are kept separate. The
/// result covers exactly the same points as the input, and the operation is
/// idempotent.
pub fn normalize(parts: &[Interval]) -> CanonicalIntervalSet {
    let mut items: Vec<Interval> = parts.iter().filter(|iv| !iv.is_empty()).cloned().collect();
    items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    let mut merged: Vec<Interval> = Vec::with_capacity(items.len());
    for iv in items {
        match merged.last_mut() {
            // strict overlap merges; a shared endpoint is in neither set
            Some(last) if iv.lo < last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi;
                }
            }
            _ => merged.push(iv),
        }
    }
    CanonicalIntervalSet {
        intervals: merged,
        points: Vec::new(),
    }
}

/// Canonical decomposition of an open-interval union, together with the
/// countability witness: one rational interior point per output interval,
/// all pairwise distinct because the intervals are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub canonical: CanonicalIntervalSet,
    #[serde(
        serialize_with = "serialize_rat_vec",
        deserialize_with = "deserialize_rat_vec"
    )]
    pub witnesses: Vec<Rat>,
    /// `Some(n)` when a family was truncated at depth n; `None` for exact
    /// finite inputs.
    pub truncation: Option<u32>,
}

fn serialize_rat_vec<S: serde::Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct W<'a>(&'a Rat);
    impl serde::Serialize for W<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            crate::rational::serialize_rat(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&W(r))?;
    }
    seq.end()
}

fn deserialize_rat_vec<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
    struct W(Rat);
    impl<'de> serde::Deserialize<'de> for W {
        fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            crate::rational::deserialize_rat(d).map(W)
        }
    }
    Vec::<W>::deserialize(d).map(|v| v.into_iter().map(|w| w.0).collect())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("cannot decompose {node} nodes: not syntactically a union of open intervals")]
    UnsupportedNode { node: &'static str },
}

/// Decomposes a finite union of open intervals (or a family truncated at
/// depth `n`) into disjoint maximal intervals with distinct rational
/// witnesses. Rejects any expression that is not syntactically an
/// open-interval union.
pub fn decompose_open(s: &SetExpr, n: u32) -> Result<Decomposition, DecomposeError> {
    let mut intervals = Vec::new();
    let mut truncated = false;
    collect_interval_union(s, n, &mut intervals, &mut truncated)?;
    let canonical = normalize(&intervals);
    let witnesses: Vec<Rat> = canonical
        .intervals
        .iter()
        .map(|iv| {
            iv.interior_rational()
                .expect("canonical intervals are nonempty")
        })
        .collect();
    Ok(Decomposition {
        canonical,
        witnesses,
        truncation: if truncated { Some(n) } else { None },
    })
}

fn collect_interval_union(
    s: &SetExpr,
    n: u32,
    out: &mut Vec<Interval>,
    truncated: &mut bool,
) -> Result<(), DecomposeError> {
    match s {
        SetExpr::Empty => Ok(()),
        SetExpr::Full => {
            out.push(Interval::full_line());
            Ok(())
        }
        SetExpr::Ival(iv) => {
            out.push(iv.clone());
            Ok(())
        }
        SetExpr::FiniteUnion(parts) => {
            for p in parts {
                collect_interval_union(p, n, out, truncated)?;
            }
            Ok(())
        }
        SetExpr::Family(fd) => {
            out.extend(fd.truncated(n));
            *truncated = true;
            Ok(())
        }
        other => Err(DecomposeError::UnsupportedNode {
            node: other.node_name(),
        }),
    }
}

/// The rationals k/den for k in [lo*den, hi*den]: the standard membership
/// test grid.
pub fn rational_grid(lo: i64, hi: i64, den: i64) -> Vec<Rat> {
    (lo * den..=hi * den)
        .map(|k| crate::rational::rat(k, den))
        .collect()
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn needs_parens_in_intersection(s: &SetExpr) -> bool {
            matches!(s, SetExpr::FiniteUnion(_))
        }
        fn needs_parens_under_complement(s: &SetExpr) -> bool {
            matches!(s, SetExpr::FiniteUnion(_) | SetExpr::Intersection(_))
        }
        match self {
            SetExpr::Empty => write!(f, "empty"),
            SetExpr::Full => write!(f, "RR"),
            SetExpr::Rationals => write!(f, "QQ"),
            SetExpr::Irrationals => write!(f, "II"),
            SetExpr::Ival(iv) => write!(f, "{iv}"),
            SetExpr::Single(p) => write!(f, "{{{p}}}"),
            SetExpr::FiniteUnion(parts) => {
                if parts.is_empty() {
                    return write!(f, "empty");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "|")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            SetExpr::Intersection(parts) => {
                if parts.is_empty() {
                    return write!(f, "RR");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "&")?;
                    }
                    if needs_parens_in_intersection(p) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
            SetExpr::Complement(inner) => {
                if needs_parens_under_complement(inner) {
                    write!(f, "~({inner})")
                } else {
                    write!(f, "~{inner}")
                }
            }
            SetExpr::Family(fd) => write!(f, "{}", fd.id_string()),
        }
    }
}
