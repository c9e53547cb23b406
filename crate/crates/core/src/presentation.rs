//! Exact finite presentations of family-free set expressions.
//!
//! Any `SetExpr` without `Family` nodes denotes a set expressible as finitely
//! many breakpoints e_1 < ... < e_k together with a membership class for each
//! open gap between them. A gap class records, componentwise, whether the
//! gap's rationals and its irrationals belong to the set; the four classes
//! form a Boolean algebra, so union, intersection, and complement act
//! atomwise. On this fragment membership, cardinality, and openness under
//! every basis/axiom pair are exactly decidable.

use crate::interval::Interval;
use crate::point::{irrational_strictly_between, rational_strictly_between, Point};
use crate::rational::{ExtRat, Rat};
use crate::sets::SetExpr;
use num::bigint::BigInt;
use num::{BigRational, One, Zero};

/// Membership class of an open gap: which of its rationals/irrationals are in
/// the set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomClass {
    pub rationals: bool,
    pub irrationals: bool,
}

impl AtomClass {
    pub const EMPTY: AtomClass = AtomClass {
        rationals: false,
        irrationals: false,
    };
    pub const FULL: AtomClass = AtomClass {
        rationals: true,
        irrationals: true,
    };
    pub const ONLY_RATIONALS: AtomClass = AtomClass {
        rationals: true,
        irrationals: false,
    };
    pub const ONLY_IRRATIONALS: AtomClass = AtomClass {
        rationals: false,
        irrationals: true,
    };

    fn or(self, other: AtomClass) -> AtomClass {
        AtomClass {
            rationals: self.rationals || other.rationals,
            irrationals: self.irrationals || other.irrationals,
        }
    }

    fn and(self, other: AtomClass) -> AtomClass {
        AtomClass {
            rationals: self.rationals && other.rationals,
            irrationals: self.irrationals && other.irrationals,
        }
    }

    fn not(self) -> AtomClass {
        AtomClass {
            rationals: !self.rationals,
            irrationals: !self.irrationals,
        }
    }
}

/// Finite presentation: `gaps.len() == breakpoints.len() + 1`, with `gaps[i]`
/// the class of the open gap between `breakpoints[i-1]` and `breakpoints[i]`
/// (unbounded at the ends) and `point_in[i]` recording whether breakpoint i
/// itself belongs to the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    breakpoints: Vec<Point>,
    point_in: Vec<bool>,
    gaps: Vec<AtomClass>,
}

/// Exact cardinality of a fragment set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FragmentCardinality {
    Finite(usize),
    CountablyInfinite,
    Uncountable,
}

/// Interior run of the set, with point bounds (`None` = unbounded). Bounds
/// may be irrational when the expression carries surd breakpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorRun {
    pub lo: Option<Point>,
    pub hi: Option<Point>,
}

impl InteriorRun {
    /// The run as an `Interval` when both bounds are rational or unbounded.
    pub fn to_rational_interval(&self) -> Option<Interval> {
        let lo = match &self.lo {
            None => ExtRat::NegInf,
            Some(Point::Rational(r)) => ExtRat::Finite(r.clone()),
            Some(Point::Surd { .. }) => return None,
        };
        let hi = match &self.hi {
            None => ExtRat::PosInf,
            Some(Point::Rational(r)) => ExtRat::Finite(r.clone()),
            Some(Point::Surd { .. }) => return None,
        };
        Some(Interval::new(lo, hi))
    }
}

/// Outcome of the exact openness analysis on the fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FragmentOpenness {
    Open(OpenPresentation),
    /// A point of the set around which no basis element fits inside the set.
    /// Under the Michael basis the witness is always rational.
    NotOpen {
        witness: Point,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenPresentation {
    /// Maximal interior runs (usual-open part).
    pub runs: Vec<InteriorRun>,
    /// Isolated irrational points of the set, each its own basis singleton.
    pub isolated_surds: Vec<Point>,
    /// True when some gap contributes uncountably many irrationals outside
    /// the interior, so the witness needs the arbitrary-singleton schema.
    pub needs_singleton_schema: bool,
}

impl Presentation {
    fn constant(class: AtomClass) -> Presentation {
        Presentation {
            breakpoints: Vec::new(),
            point_in: Vec::new(),
            gaps: vec![class],
        }
    }

    fn singleton(p: Point) -> Presentation {
        Presentation {
            breakpoints: vec![p],
            point_in: vec![true],
            gaps: vec![AtomClass::EMPTY, AtomClass::EMPTY],
        }
    }

    fn from_interval(iv: &Interval) -> Presentation {
        if iv.is_empty() {
            return Presentation::constant(AtomClass::EMPTY);
        }
        let mut breakpoints = Vec::new();
        if let ExtRat::Finite(r) = &iv.lo {
            breakpoints.push(Point::Rational(r.clone()));
        }
        if let ExtRat::Finite(r) = &iv.hi {
            breakpoints.push(Point::Rational(r.clone()));
        }
        match breakpoints.len() {
            0 => Presentation::constant(AtomClass::FULL),
            1 => {
                let inside_right = matches!(iv.lo, ExtRat::Finite(_));
                let gaps = if inside_right {
                    vec![AtomClass::EMPTY, AtomClass::FULL]
                } else {
                    vec![AtomClass::FULL, AtomClass::EMPTY]
                };
                Presentation {
                    breakpoints,
                    point_in: vec![false],
                    gaps,
                }
            }
            _ => Presentation {
                breakpoints,
                point_in: vec![false, false],
                gaps: vec![AtomClass::EMPTY, AtomClass::FULL, AtomClass::EMPTY],
            },
        }
    }

    /// Exact membership of a point.
    pub fn contains(&self, x: &Point) -> bool {
        match self.breakpoints.binary_search(x) {
            Ok(i) => self.point_in[i],
            Err(g) => {
                let class = self.gaps[g];
                if x.is_rational() {
                    class.rationals
                } else {
                    class.irrationals
                }
            }
        }
    }

    /// Class of the gap immediately right of `left` (`None` = -∞).
    fn gap_class_right_of(&self, left: Option<&Point>) -> AtomClass {
        match left {
            None => self.gaps[0],
            Some(u) => match self.breakpoints.binary_search(u) {
                Ok(i) => self.gaps[i + 1],
                Err(g) => self.gaps[g],
            },
        }
    }

    fn combine(
        &self,
        other: &Presentation,
        class_op: fn(AtomClass, AtomClass) -> AtomClass,
        bool_op: fn(bool, bool) -> bool,
    ) -> Presentation {
        let mut breakpoints: Vec<Point> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .cloned()
            .collect();
        breakpoints.sort();
        breakpoints.dedup();
        let point_in: Vec<bool> = breakpoints
            .iter()
            .map(|e| bool_op(self.contains(e), other.contains(e)))
            .collect();
        let mut gaps = Vec::with_capacity(breakpoints.len() + 1);
        gaps.push(class_op(
            self.gap_class_right_of(None),
            other.gap_class_right_of(None),
        ));
        for e in &breakpoints {
            gaps.push(class_op(
                self.gap_class_right_of(Some(e)),
                other.gap_class_right_of(Some(e)),
            ));
        }
        Presentation {
            breakpoints,
            point_in,
            gaps,
        }
        .simplified()
    }

    fn negated(&self) -> Presentation {
        Presentation {
            breakpoints: self.breakpoints.clone(),
            point_in: self.point_in.iter().map(|b| !b).collect(),
            gaps: self.gaps.iter().map(|c| c.not()).collect(),
        }
        .simplified()
    }

    /// Removes breakpoints indistinguishable from their surrounding gaps.
    fn simplified(self) -> Presentation {
        let mut breakpoints = Vec::with_capacity(self.breakpoints.len());
        let mut point_in = Vec::with_capacity(self.point_in.len());
        let mut gaps = vec![self.gaps[0]];
        for (i, e) in self.breakpoints.into_iter().enumerate() {
            let left = *gaps.last().unwrap();
            let right = self.gaps[i + 1];
            let class_at_point = if e.is_rational() {
                left.rationals
            } else {
                left.irrationals
            };
            if left == right && self.point_in[i] == class_at_point {
                continue; // invisible breakpoint
            }
            breakpoints.push(e);
            point_in.push(self.point_in[i]);
            gaps.push(right);
        }
        Presentation {
            breakpoints,
            point_in,
            gaps,
        }
    }

    /// Exact emptiness of s ∩ ℚ on the fragment.
    pub fn has_rational_points(&self) -> bool {
        self.gaps.iter().any(|c| c.rationals)
            || self
                .breakpoints
                .iter()
                .zip(&self.point_in)
                .any(|(e, in_s)| *in_s && e.is_rational())
    }

    pub fn is_empty_set(&self) -> bool {
        self.gaps.iter().all(|c| *c == AtomClass::EMPTY) && !self.point_in.iter().any(|b| *b)
    }

    pub fn cardinality(&self) -> FragmentCardinality {
        if self.gaps.iter().any(|c| c.irrationals) {
            FragmentCardinality::Uncountable
        } else if self.gaps.iter().any(|c| c.rationals) {
            FragmentCardinality::CountablyInfinite
        } else {
            FragmentCardinality::Finite(self.point_in.iter().filter(|b| **b).count())
        }
    }

    fn gap_bounds(&self, g: usize) -> (Option<&Point>, Option<&Point>) {
        let lo = if g == 0 {
            None
        } else {
            Some(&self.breakpoints[g - 1])
        };
        let hi = self.breakpoints.get(g);
        (lo, hi)
    }

    /// A rational strictly inside gap `g`.
    fn rational_in_gap(&self, g: usize) -> Rat {
        match self.gap_bounds(g) {
            (None, None) => Rat::zero(),
            (None, Some(b)) => BigRational::from_integer(b.floor_int() - BigInt::one()),
            (Some(a), None) => BigRational::from_integer(a.floor_int() + BigInt::one()),
            (Some(a), Some(b)) => rational_strictly_between(a, b),
        }
    }

    /// An irrational strictly inside gap `g`.
    fn irrational_in_gap(&self, g: usize) -> Point {
        match self.gap_bounds(g) {
            (None, None) => Point::sqrt(2),
            (None, Some(b)) => {
                // m + sqrt(2)/2 < m + 1 <= b
                let m = BigRational::from_integer(b.floor_int() - BigInt::from(2));
                Point::surd(m, crate::rational::rat(1, 2), 2)
            }
            (Some(a), None) => {
                let m = BigRational::from_integer(a.floor_int() + BigInt::from(2));
                Point::surd(m, crate::rational::rat(1, 2), 2)
            }
            (Some(a), Some(b)) => irrational_strictly_between(a, b),
        }
    }

    /// Exact openness in the usual topology: every point of the set must
    /// carry a full two-sided interval neighborhood inside the set. Scans
    /// left to right so the reported witness is the leftmost obstruction.
    pub fn usual_openness(&self) -> FragmentOpenness {
        for (g, class) in self.gaps.iter().enumerate() {
            match *class {
                AtomClass::ONLY_RATIONALS => {
                    return FragmentOpenness::NotOpen {
                        witness: Point::Rational(self.rational_in_gap(g)),
                    }
                }
                AtomClass::ONLY_IRRATIONALS => {
                    return FragmentOpenness::NotOpen {
                        witness: self.irrational_in_gap(g),
                    }
                }
                _ => {}
            }
            if g < self.breakpoints.len()
                && self.point_in[g]
                && !(self.gaps[g] == AtomClass::FULL && self.gaps[g + 1] == AtomClass::FULL)
            {
                return FragmentOpenness::NotOpen {
                    witness: self.breakpoints[g].clone(),
                };
            }
        }
        FragmentOpenness::Open(OpenPresentation {
            runs: self.interior_runs(),
            isolated_surds: Vec::new(),
            needs_singleton_schema: false,
        })
    }

    /// Exact openness in the Michael-line topology (arbitrary unions): only
    /// rational points of the set need interval neighborhoods; irrational
    /// points are basis singletons. NotOpen witnesses are always rational.
    pub fn michael_openness(&self) -> FragmentOpenness {
        for (g, class) in self.gaps.iter().enumerate() {
            if *class == AtomClass::ONLY_RATIONALS {
                return FragmentOpenness::NotOpen {
                    witness: Point::Rational(self.rational_in_gap(g)),
                };
            }
            if g < self.breakpoints.len()
                && self.point_in[g]
                && self.breakpoints[g].is_rational()
                && !(self.gaps[g] == AtomClass::FULL && self.gaps[g + 1] == AtomClass::FULL)
            {
                return FragmentOpenness::NotOpen {
                    witness: self.breakpoints[g].clone(),
                };
            }
        }
        let runs = self.interior_runs();
        let mut isolated_surds = Vec::new();
        for (i, e) in self.breakpoints.iter().enumerate() {
            if self.point_in[i]
                && !e.is_rational()
                && !(self.gaps[i] == AtomClass::FULL && self.gaps[i + 1] == AtomClass::FULL)
            {
                isolated_surds.push(e.clone());
            }
        }
        let needs_singleton_schema = self.gaps.contains(&AtomClass::ONLY_IRRATIONALS);
        FragmentOpenness::Open(OpenPresentation {
            runs,
            isolated_surds,
            needs_singleton_schema,
        })
    }

    /// A point of the open interval (lo, hi) outside the set, scanning
    /// atoms left to right; `None` means (lo, hi) is contained in the set.
    /// Pre: lo < hi.
    pub fn find_non_member_in(&self, lo: &Point, hi: &Point) -> Option<Point> {
        for (g, class) in self.gaps.iter().enumerate() {
            let (a, b) = self.gap_bounds(g);
            let over_lo = match a {
                Some(a) if a > lo => a.clone(),
                _ => lo.clone(),
            };
            let over_hi = match b {
                Some(b) if b < hi => b.clone(),
                _ => hi.clone(),
            };
            if over_lo < over_hi {
                if !class.rationals {
                    return Some(Point::Rational(rational_strictly_between(
                        &over_lo, &over_hi,
                    )));
                }
                if !class.irrationals {
                    return Some(irrational_strictly_between(&over_lo, &over_hi));
                }
            }
            if g < self.breakpoints.len() {
                let bp = &self.breakpoints[g];
                if !self.point_in[g] && bp > lo && bp < hi {
                    return Some(bp.clone());
                }
            }
        }
        None
    }

    /// Maximal runs of Full gaps glued across in-set breakpoints.
    fn interior_runs(&self) -> Vec<InteriorRun> {
        let mut runs = Vec::new();
        let mut start: Option<Option<Point>> = None; // lo bound of current run
        for (g, class) in self.gaps.iter().enumerate() {
            if *class == AtomClass::FULL {
                if start.is_none() {
                    start = Some(if g == 0 {
                        None
                    } else {
                        Some(self.breakpoints[g - 1].clone())
                    });
                }
                // does the run continue through breakpoint g?
                let continues = g < self.breakpoints.len()
                    && self.point_in[g]
                    && self.gaps[g + 1] == AtomClass::FULL;
                if !continues {
                    let hi = self.breakpoints.get(g).cloned();
                    runs.push(InteriorRun {
                        lo: start.take().unwrap(),
                        hi,
                    });
                }
            }
        }
        runs
    }
}

/// Evaluates a family-free expression to its exact presentation; `None` when
/// the expression contains a `Family` node.
pub fn eval(s: &SetExpr) -> Option<Presentation> {
    match s {
        SetExpr::Empty => Some(Presentation::constant(AtomClass::EMPTY)),
        SetExpr::Full => Some(Presentation::constant(AtomClass::FULL)),
        SetExpr::Rationals => Some(Presentation::constant(AtomClass::ONLY_RATIONALS)),
        SetExpr::Irrationals => Some(Presentation::constant(AtomClass::ONLY_IRRATIONALS)),
        SetExpr::Ival(iv) => Some(Presentation::from_interval(iv)),
        SetExpr::Single(p) => Some(Presentation::singleton(p.clone())),
        SetExpr::FiniteUnion(parts) => {
            let mut acc = Presentation::constant(AtomClass::EMPTY);
            for p in parts {
                acc = acc.combine(&eval(p)?, AtomClass::or, |a, b| a || b);
            }
            Some(acc)
        }
        SetExpr::Intersection(parts) => {
            let mut acc = Presentation::constant(AtomClass::FULL);
            for p in parts {
                acc = acc.combine(&eval(p)?, AtomClass::and, |a, b| a && b);
            }
            Some(acc)
        }
        SetExpr::Complement(inner) => Some(eval(inner)?.negated()),
        SetExpr::Family(_) => None,
    }
}
