//! Topology specifications, the certified openness decision procedure, the
//! cardinality classifier, and the finite-universe axiom verifier.
//!
//! The openness procedure is a sound rule-based certifier over the
//! representable fragment, not a general decision procedure: `Unknown` is an
//! honest third verdict. Family-free expressions are decided exactly through
//! their finite presentations; family-bearing expressions go through named
//! rules. NotOpen obstructions:
//!
//! - R0: a point of the set around which no basis element fits inside the
//!   set (under the Michael basis the witness is always rational, since
//!   irrational points carry singleton neighborhoods).
//! - R1 (Michael basis, countable mode): a set disjoint from ℚ that is
//!   uncountable cannot be a countable union of Michael basis elements —
//!   no member interval can avoid ℚ, and countably many singletons cannot
//!   cover an uncountable set.
//! - R2: not open under arbitrary unions over the same basis implies not
//!   open under countable unions (the countable topology is coarser).

use crate::interval::Interval;
use crate::measure::{measure_bounds, MeasureBounds};
use crate::membership::Membership;
use crate::point::Point;
use crate::presentation::{self, FragmentCardinality, FragmentOpenness, OpenPresentation};
use crate::rational::Rat;
use crate::sets::{contains_no_rationals, intersect, member, FamilyDescriptor, SetExpr};
use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "usual")]
    Usual,
    #[serde(rename = "michael")]
    Michael,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnionMode {
    #[serde(rename = "arbitrary")]
    Arbitrary,
    #[serde(rename = "countable")]
    Countable,
}

/// One of the four topologies under study: a basis plus a union axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopologySpec {
    pub basis: Basis,
    #[serde(rename = "unionMode")]
    pub union_mode: UnionMode,
}

impl TopologySpec {
    pub const USUAL: TopologySpec = TopologySpec {
        basis: Basis::Usual,
        union_mode: UnionMode::Arbitrary,
    };
    pub const USUAL_C: TopologySpec = TopologySpec {
        basis: Basis::Usual,
        union_mode: UnionMode::Countable,
    };
    pub const MICHAEL: TopologySpec = TopologySpec {
        basis: Basis::Michael,
        union_mode: UnionMode::Arbitrary,
    };
    pub const MICHAEL_C: TopologySpec = TopologySpec {
        basis: Basis::Michael,
        union_mode: UnionMode::Countable,
    };

    pub fn all() -> [TopologySpec; 4] {
        [Self::USUAL, Self::USUAL_C, Self::MICHAEL, Self::MICHAEL_C]
    }

    pub fn name(&self) -> &'static str {
        match (self.basis, self.union_mode) {
            (Basis::Usual, UnionMode::Arbitrary) => "usual",
            (Basis::Usual, UnionMode::Countable) => "usualC",
            (Basis::Michael, UnionMode::Arbitrary) => "michael",
            (Basis::Michael, UnionMode::Countable) => "michaelC",
        }
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Sound cardinality classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum CardinalityClass {
    Finite { count: usize },
    CountablyInfinite,
    Uncountable,
    Unknown,
}

impl fmt::Display for CardinalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalityClass::Finite { count } => write!(f, "Finite({count})"),
            CardinalityClass::CountablyInfinite => write!(f, "CountablyInfinite"),
            CardinalityClass::Uncountable => write!(f, "Uncountable"),
            CardinalityClass::Unknown => write!(f, "Unknown"),
        }
    }
}

fn find_family(s: &SetExpr) -> Option<&FamilyDescriptor> {
    match s {
        SetExpr::Family(fd) => Some(fd),
        SetExpr::FiniteUnion(parts) | SetExpr::Intersection(parts) => {
            parts.iter().find_map(find_family)
        }
        SetExpr::Complement(inner) => find_family(inner),
        _ => None,
    }
}

/// Default probe window for positivity arguments about a family of total
/// length a: (0, ⌈a⌉ + 2), whose width exceeds a by at least 2.
fn probe_window(fd: &FamilyDescriptor) -> Interval {
    let hi = fd.total().ceil() + BigRational::from_integer(2.into());
    Interval::rational(Rat::zero(), hi)
}

fn cardinality_with_evidence(s: &SetExpr, n: u32) -> (CardinalityClass, Option<MeasureBounds>) {
    if let Some(pres) = presentation::eval(s) {
        let class = match pres.cardinality() {
            FragmentCardinality::Finite(count) => CardinalityClass::Finite { count },
            FragmentCardinality::CountablyInfinite => CardinalityClass::CountablyInfinite,
            FragmentCardinality::Uncountable => CardinalityClass::Uncountable,
        };
        return (class, None);
    }
    // family-bearing: a positive lower measure bound certifies uncountability
    if let Ok(b) = measure_bounds(s, n) {
        if b.lower.is_positive() {
            return (CardinalityClass::Uncountable, Some(b));
        }
    }
    // complements of families need a window to expose positive measure
    if let Some(fd) = find_family(s) {
        let windowed = intersect(s.clone(), SetExpr::Ival(probe_window(fd)));
        if let Ok(b) = measure_bounds(&windowed, n) {
            if b.lower.is_positive() {
                return (CardinalityClass::Uncountable, Some(b));
            }
        }
    }
    if let SetExpr::FiniteUnion(parts) = s {
        if parts
            .iter()
            .any(|p| cardinality_with_evidence(p, n).0 == CardinalityClass::Uncountable)
        {
            return (CardinalityClass::Uncountable, None);
        }
    }
    (CardinalityClass::Unknown, None)
}

/// Classifies the cardinality of `s`: exact on the family-free fragment,
/// measure-based for families and their windowed complements, `Unknown`
/// otherwise.
pub fn cardinality(s: &SetExpr, n: u32) -> CardinalityClass {
    cardinality_with_evidence(s, n).0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OpennessVerdict {
    Open,
    NotOpen,
    Unknown,
}

impl fmt::Display for OpennessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpennessVerdict::Open => write!(f, "Open"),
            OpennessVerdict::NotOpen => write!(f, "NotOpen"),
            OpennessVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleId {
    /// The set is literally a basis element of the topology.
    #[serde(rename = "basis-element")]
    BasisElement,
    /// Open with an explicit countable presentation: canonical intervals
    /// plus finitely many singleton points.
    #[serde(rename = "countable-presentation")]
    CountablePresentation,
    /// Open as a named countable family of intervals.
    #[serde(rename = "named-family")]
    NamedFamily,
    /// Open in the Michael line under arbitrary unions via the schema
    /// "interval part plus one singleton per remaining irrational point".
    #[serde(rename = "arbitrary-singleton-schema")]
    ArbitrarySingletonSchema,
    /// Finite union of sets certified open.
    #[serde(rename = "union-of-open")]
    UnionOfOpen,
    /// Finite intersection of sets certified open.
    #[serde(rename = "intersection-of-open")]
    IntersectionOfOpen,
    R0,
    R1,
    R2,
    /// No rule fired at the given truncation depth.
    #[serde(rename = "none")]
    NoRule,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::BasisElement => "basis-element",
            RuleId::CountablePresentation => "countable-presentation",
            RuleId::NamedFamily => "named-family",
            RuleId::ArbitrarySingletonSchema => "arbitrary-singleton-schema",
            RuleId::UnionOfOpen => "union-of-open",
            RuleId::IntersectionOfOpen => "intersection-of-open",
            RuleId::R0 => "R0",
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::NoRule => "none",
        };
        write!(f, "{s}")
    }
}

/// Supporting facts of a verdict. Which fields are present depends on the
/// rule; every populated field re-verifies through exact-sets and measure
/// operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Evidence {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<Interval>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
    #[serde(rename = "familyId", skip_serializing_if = "Option::is_none")]
    pub family_id: Option<String>,
    #[serde(rename = "measureBounds", skip_serializing_if = "Option::is_none")]
    pub measure_bounds: Option<MeasureBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cardinality: Option<CardinalityClass>,
    /// Inner certificate for R2: the arbitrary-union-mode obstruction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner: Option<Box<OpennessCertificate>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpennessCertificate {
    pub verdict: OpennessVerdict,
    pub rule: RuleId,
    pub basis: Basis,
    #[serde(rename = "unionMode")]
    pub union_mode: UnionMode,
    pub truncation: u32,
    pub evidence: Evidence,
}

impl OpennessCertificate {
    fn new(verdict: OpennessVerdict, rule: RuleId, t: TopologySpec, n: u32) -> Self {
        OpennessCertificate {
            verdict,
            rule,
            basis: t.basis,
            union_mode: t.union_mode,
            truncation: n,
            evidence: Evidence::default(),
        }
    }

    fn open(rule: RuleId, t: TopologySpec, n: u32) -> Self {
        Self::new(OpennessVerdict::Open, rule, t, n)
    }

    fn not_open(rule: RuleId, t: TopologySpec, n: u32) -> Self {
        Self::new(OpennessVerdict::NotOpen, rule, t, n)
    }

    fn unknown(t: TopologySpec, n: u32) -> Self {
        Self::new(OpennessVerdict::Unknown, RuleId::NoRule, t, n)
    }
}

fn presentation_evidence(op: &OpenPresentation) -> Evidence {
    let mut intervals = Vec::new();
    let mut all_rational = true;
    for run in &op.runs {
        match run.to_rational_interval() {
            Some(iv) => intervals.push(iv),
            None => all_rational = false,
        }
    }
    Evidence {
        intervals: if all_rational { Some(intervals) } else { None },
        points: Some(op.isolated_surds.clone()),
        ..Evidence::default()
    }
}

fn fragment_certificate(
    pres_open: FragmentOpenness,
    t: TopologySpec,
    n: u32,
) -> OpennessCertificate {
    match pres_open {
        FragmentOpenness::Open(op) => {
            if op.needs_singleton_schema {
                // uncountably many singleton basis elements: only valid
                // under the arbitrary union axiom
                debug_assert_eq!(t.union_mode, UnionMode::Arbitrary);
                let mut cert = OpennessCertificate::open(RuleId::ArbitrarySingletonSchema, t, n);
                cert.evidence = presentation_evidence(&op);
                cert
            } else {
                let mut cert = OpennessCertificate::open(RuleId::CountablePresentation, t, n);
                cert.evidence = presentation_evidence(&op);
                cert
            }
        }
        FragmentOpenness::NotOpen { witness } => {
            let arbitrary = TopologySpec {
                basis: t.basis,
                union_mode: UnionMode::Arbitrary,
            };
            let mut r0 = OpennessCertificate::not_open(RuleId::R0, arbitrary, n);
            r0.evidence.points = Some(vec![witness.clone()]);
            if t.union_mode == UnionMode::Arbitrary {
                r0
            } else {
                // lift through R2: coarser countable topology
                let mut cert = OpennessCertificate::not_open(RuleId::R2, t, n);
                cert.evidence.points = Some(vec![witness]);
                cert.evidence.inner = Some(Box::new(r0));
                cert
            }
        }
    }
}

/// Sound three-valued openness verdict for `s` in topology `t`, inspecting
/// families to depth `n`. Certificates are independently replayable via
/// [`replay`].
pub fn is_open(s: &SetExpr, t: TopologySpec, n: u32) -> OpennessCertificate {
    // literal basis elements
    match (t.basis, s) {
        (_, SetExpr::Ival(iv)) if !iv.is_empty() => {
            let mut cert = OpennessCertificate::open(RuleId::BasisElement, t, n);
            cert.evidence.intervals = Some(vec![iv.clone()]);
            return cert;
        }
        (Basis::Michael, SetExpr::Single(p)) if !p.is_rational() => {
            let mut cert = OpennessCertificate::open(RuleId::BasisElement, t, n);
            cert.evidence.points = Some(vec![p.clone()]);
            return cert;
        }
        _ => {}
    }

    // R1 precedes everything else in the countable Michael topology: a set
    // disjoint from ℚ that is uncountable has no countable basis cover.
    if t == TopologySpec::MICHAEL_C {
        let no_rationals = match presentation::eval(s) {
            Some(p) => !p.has_rational_points(),
            None => contains_no_rationals(s),
        };
        if no_rationals {
            let (card, bounds) = cardinality_with_evidence(s, n);
            if card == CardinalityClass::Uncountable {
                let mut cert = OpennessCertificate::not_open(RuleId::R1, t, n);
                cert.evidence.cardinality = Some(card);
                cert.evidence.measure_bounds = bounds;
                return cert;
            }
        }
    }

    // family-free fragment: exact decision
    if let Some(pres) = presentation::eval(s) {
        let fragment = match t.basis {
            Basis::Usual => pres.usual_openness(),
            Basis::Michael => pres.michael_openness(),
        };
        if let FragmentOpenness::Open(ref op) = fragment {
            if op.needs_singleton_schema && t.union_mode == UnionMode::Countable {
                // open only through uncountably many singletons; no rule
                // certifies it under the countable axiom
                return OpennessCertificate::unknown(t, n);
            }
        }
        return fragment_certificate(fragment, t, n);
    }

    // family-bearing open rules
    match s {
        SetExpr::Family(fd) => {
            let mut cert = OpennessCertificate::open(RuleId::NamedFamily, t, n);
            cert.evidence.family_id = Some(fd.id_string());
            cert
        }
        SetExpr::FiniteUnion(parts) => {
            // a union containing a family covers all of ℚ with intervals, so
            // under arbitrary unions on the Michael basis the remainder is
            // coverable by singletons
            if t == TopologySpec::MICHAEL {
                if let Some(fd) = parts.iter().find_map(|p| match p {
                    SetExpr::Family(fd) => Some(fd),
                    _ => None,
                }) {
                    let mut cert =
                        OpennessCertificate::open(RuleId::ArbitrarySingletonSchema, t, n);
                    cert.evidence.family_id = Some(fd.id_string());
                    return cert;
                }
            }
            let children: Vec<OpennessCertificate> =
                parts.iter().map(|p| is_open(p, t, n)).collect();
            if children.iter().all(|c| c.verdict == OpennessVerdict::Open) {
                let mut cert = OpennessCertificate::open(RuleId::UnionOfOpen, t, n);
                cert.evidence.family_id = find_family(s).map(|fd| fd.id_string());
                cert
            } else {
                OpennessCertificate::unknown(t, n)
            }
        }
        SetExpr::Intersection(parts) => {
            let children: Vec<OpennessCertificate> =
                parts.iter().map(|p| is_open(p, t, n)).collect();
            if children.iter().all(|c| c.verdict == OpennessVerdict::Open) {
                let mut cert = OpennessCertificate::open(RuleId::IntersectionOfOpen, t, n);
                cert.evidence.family_id = find_family(s).map(|fd| fd.id_string());
                cert
            } else {
                OpennessCertificate::unknown(t, n)
            }
        }
        SetExpr::Complement(_) if t == TopologySpec::MICHAEL && contains_no_rationals(s) => {
            // every point of s is irrational: an arbitrary union of
            // singleton basis elements
            let mut cert = OpennessCertificate::open(RuleId::ArbitrarySingletonSchema, t, n);
            cert.evidence.points = Some(Vec::new());
            cert
        }
        _ => OpennessCertificate::unknown(t, n),
    }
}

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("verdict mismatch on replay: certificate says {expected}, fresh run says {actual}")]
    VerdictMismatch {
        expected: OpennessVerdict,
        actual: OpennessVerdict,
    },
    #[error("witness presentation disagrees with the set at {point}")]
    WitnessDisagreement { point: Point },
    #[error("R0 witness {point} is not a member of the set")]
    WitnessNotMember { point: Point },
    #[error("R0 obstruction failed: probe interval around {point} fits inside the set")]
    ObstructionFailed { point: Point },
    #[error("R1 fact failed: {0}")]
    R1FactFailed(String),
    #[error("R2 certificate is missing or malformed: {0}")]
    BadR2(String),
    #[error("evidence malformed: {0}")]
    MalformedEvidence(String),
}

/// Rational sample grid spanning the expression's finite structure.
pub fn sample_grid(s: &SetExpr, den: i64) -> Vec<Rat> {
    fn scan(s: &SetExpr, lo: &mut i64, hi: &mut i64) {
        let mut push = |r: &Rat| {
            let f = r.floor().to_integer();
            let c = r.ceil().to_integer();
            let fi = i64::try_from(&f).unwrap_or(i64::MIN).clamp(-100, 100);
            let ci = i64::try_from(&c).unwrap_or(i64::MAX).clamp(-100, 100);
            *lo = (*lo).min(fi - 1);
            *hi = (*hi).max(ci + 1);
        };
        match s {
            SetExpr::Ival(iv) => {
                if let Some(r) = iv.lo.as_finite() {
                    push(r);
                }
                if let Some(r) = iv.hi.as_finite() {
                    push(r);
                }
            }
            SetExpr::Single(Point::Rational(r)) => push(r),
            SetExpr::Single(Point::Surd { p, .. }) => push(p),
            SetExpr::FiniteUnion(parts) | SetExpr::Intersection(parts) => {
                for p in parts {
                    scan(p, lo, hi);
                }
            }
            SetExpr::Complement(inner) => scan(inner, lo, hi),
            SetExpr::Family(fd) => {
                push(&fd.total());
                push(&(-fd.total()));
            }
            _ => {}
        }
    }
    let (mut lo, mut hi) = (-2i64, 2i64);
    scan(s, &mut lo, &mut hi);
    crate::sets::rational_grid(lo, hi, den)
}

fn check_open_presentation(cert: &OpennessCertificate, s: &SetExpr) -> Result<(), ReplayError> {
    let (Some(intervals), Some(points)) = (&cert.evidence.intervals, &cert.evidence.points) else {
        return Ok(()); // schema-style evidence checked elsewhere
    };
    let witness =
        crate::sets::CanonicalIntervalSet::new(intervals.clone(), points.clone()).to_set_expr();
    for x in sample_grid(s, 16) {
        let px = Point::Rational(x);
        let in_s = member(&px, s, cert.truncation);
        let in_w = member(&px, &witness, cert.truncation);
        if in_s != Membership::Unknown && in_w != Membership::Unknown && in_s != in_w {
            return Err(ReplayError::WitnessDisagreement { point: px });
        }
    }
    for p in points {
        if member(p, s, cert.truncation) == Membership::Out {
            return Err(ReplayError::WitnessDisagreement { point: p.clone() });
        }
    }
    Ok(())
}

fn check_r0(cert: &OpennessCertificate, s: &SetExpr) -> Result<(), ReplayError> {
    let witness = cert
        .evidence
        .points
        .as_ref()
        .and_then(|ps| ps.first())
        .ok_or_else(|| ReplayError::MalformedEvidence("R0 needs a witness point".into()))?;
    if member(witness, s, cert.truncation) != Membership::In {
        return Err(ReplayError::WitnessNotMember {
            point: witness.clone(),
        });
    }
    // exhibit escape points for a sequence of shrinking probe intervals:
    // each probe around the witness must contain a point outside the set
    let pres = presentation::eval(s).ok_or_else(|| {
        ReplayError::MalformedEvidence("R0 applies to family-free sets only".into())
    })?;
    for k in 1..=8u32 {
        let eps = crate::rational::inv_pow2(k);
        let lo = candidate_shift(witness, &-eps.clone());
        let hi = candidate_shift(witness, &eps);
        match pres.find_non_member_in(&lo, &hi) {
            Some(y) => {
                if member(&y, s, cert.truncation) != Membership::Out {
                    return Err(ReplayError::WitnessDisagreement { point: y });
                }
            }
            None => {
                return Err(ReplayError::ObstructionFailed {
                    point: witness.clone(),
                })
            }
        }
    }
    Ok(())
}

fn candidate_shift(x: &Point, delta: &Rat) -> Point {
    match x {
        Point::Rational(r) => Point::Rational(r + delta),
        Point::Surd { p, c, d } => Point::Surd {
            p: p + delta,
            c: c.clone(),
            d: *d,
        },
    }
}

fn check_r1(cert: &OpennessCertificate, s: &SetExpr) -> Result<(), ReplayError> {
    // fact 1: s contains no rationals
    let no_rationals = match presentation::eval(s) {
        Some(p) => !p.has_rational_points(),
        None => contains_no_rationals(s),
    };
    if !no_rationals {
        return Err(ReplayError::R1FactFailed("set meets ℚ".into()));
    }
    for x in sample_grid(s, 8) {
        if member(&Point::Rational(x.clone()), s, cert.truncation) == Membership::In {
            return Err(ReplayError::R1FactFailed(format!(
                "rational {} is a member",
                crate::rational::fmt_rat(&x)
            )));
        }
    }
    // fact 2: s is uncountable
    let (card, bounds) = cardinality_with_evidence(s, cert.truncation);
    if card != CardinalityClass::Uncountable {
        return Err(ReplayError::R1FactFailed(format!(
            "cardinality recomputes to {card}"
        )));
    }
    if cert.evidence.cardinality != Some(CardinalityClass::Uncountable) {
        return Err(ReplayError::MalformedEvidence(
            "R1 must record the Uncountable classification".into(),
        ));
    }
    if let (Some(expected), Some(actual)) = (&cert.evidence.measure_bounds, &bounds) {
        if expected != actual {
            return Err(ReplayError::R1FactFailed(
                "measure evidence does not recompute".into(),
            ));
        }
    }
    Ok(())
}

/// Re-verifies a certificate against the set it claims to describe: re-runs
/// the decision procedure and re-checks the rule's supporting facts through
/// member(), cardinality(), and measure operations.
pub fn replay(cert: &OpennessCertificate, s: &SetExpr) -> Result<(), ReplayError> {
    let t = TopologySpec {
        basis: cert.basis,
        union_mode: cert.union_mode,
    };
    let fresh = is_open(s, t, cert.truncation);
    if fresh.verdict != cert.verdict {
        return Err(ReplayError::VerdictMismatch {
            expected: cert.verdict,
            actual: fresh.verdict,
        });
    }
    match cert.rule {
        RuleId::BasisElement | RuleId::CountablePresentation | RuleId::ArbitrarySingletonSchema => {
            check_open_presentation(cert, s)
        }
        RuleId::NamedFamily => {
            // spot-check: enumerated rationals are members
            for i in 1..=cert.truncation.min(16) {
                let q = Point::Rational(crate::enumeration::nth_rational_u32(i));
                if member(&q, s, cert.truncation) != Membership::In {
                    return Err(ReplayError::WitnessNotMember { point: q });
                }
            }
            Ok(())
        }
        RuleId::UnionOfOpen | RuleId::IntersectionOfOpen | RuleId::NoRule => Ok(()),
        RuleId::R0 => check_r0(cert, s),
        RuleId::R1 => check_r1(cert, s),
        RuleId::R2 => {
            let inner = cert
                .evidence
                .inner
                .as_ref()
                .ok_or_else(|| ReplayError::BadR2("missing inner certificate".into()))?;
            if inner.union_mode != UnionMode::Arbitrary {
                return Err(ReplayError::BadR2(
                    "inner certificate must use the arbitrary union mode".into(),
                ));
            }
            if inner.basis != cert.basis {
                return Err(ReplayError::BadR2("inner basis mismatch".into()));
            }
            if inner.verdict != OpennessVerdict::NotOpen {
                return Err(ReplayError::BadR2(
                    "inner certificate must be NotOpen".into(),
                ));
            }
            replay(inner, s)
        }
    }
}

/// Report of the finite-universe axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub mode: UnionMode,
    pub missing_empty: bool,
    pub missing_universe: bool,
    /// Subfamily whose union escapes the collection, if any.
    pub union_violation: Option<UnionViolation>,
    /// Pair whose intersection escapes the collection, if any.
    pub intersection_violation: Option<IntersectionViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionViolation {
    pub subfamily: Vec<Vec<u32>>,
    pub union: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionViolation {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub intersection: Vec<u32>,
}

impl AxiomReport {
    pub fn is_valid_topology(&self) -> bool {
        !self.missing_empty
            && !self.missing_universe
            && self.union_violation.is_none()
            && self.intersection_violation.is_none()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AxiomInputError {
    #[error("universe too large for brute force: {0} > 20 elements")]
    UniverseTooLarge(usize),
    #[error("subset #{index} is not contained in the universe")]
    SubsetOutsideUniverse { index: usize },
}

/// Checks the three axioms over an explicit finite universe by exhaustive
/// enumeration. On a finite universe every subfamily is finite, hence
/// countable, so the two union modes necessarily agree; the mode is recorded
/// in the report.
pub fn verify_axioms(
    universe: &[u32],
    collection: &[Vec<u32>],
    mode: UnionMode,
) -> Result<AxiomReport, AxiomInputError> {
    // tolerate repeated labels in the universe listing
    let universe = {
        let mut seen: Vec<u32> = Vec::with_capacity(universe.len());
        for x in universe {
            if !seen.contains(x) {
                seen.push(*x);
            }
        }
        seen
    };
    if universe.len() > 20 {
        return Err(AxiomInputError::UniverseTooLarge(universe.len()));
    }
    let to_mask = |set: &[u32]| -> Option<u32> {
        let mut m = 0u32;
        for x in set {
            let bit = universe.iter().position(|u| u == x)?;
            m |= 1 << bit;
        }
        Some(m)
    };
    let from_mask = |m: u32| -> Vec<u32> {
        universe
            .iter()
            .enumerate()
            .filter(|(i, _)| m & (1 << i) != 0)
            .map(|(_, u)| *u)
            .collect()
    };
    let full: u32 = if universe.is_empty() {
        0
    } else {
        (1u32 << universe.len()) - 1
    };
    let mut masks = Vec::with_capacity(collection.len());
    for (index, set) in collection.iter().enumerate() {
        masks.push(to_mask(set).ok_or(AxiomInputError::SubsetOutsideUniverse { index })?);
    }

    let missing_empty = !masks.contains(&0);
    let missing_universe = !masks.contains(&full);

    // union axiom: exhaustive subfamily enumeration when feasible, pairwise
    // otherwise (equivalent for finite collections: unions build up pairwise)
    let mut union_violation = None;
    if masks.len() <= 16 {
        'outer: for picks in 1u32..(1 << masks.len()) {
            if picks.count_ones() < 2 {
                continue;
            }
            let mut u = 0u32;
            for (i, m) in masks.iter().enumerate() {
                if picks & (1 << i) != 0 {
                    u |= m;
                }
            }
            if !masks.contains(&u) {
                let subfamily = masks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| picks & (1 << i) != 0)
                    .map(|(_, m)| from_mask(*m))
                    .collect();
                union_violation = Some(UnionViolation {
                    subfamily,
                    union: from_mask(u),
                });
                break 'outer;
            }
        }
    } else {
        'pairs: for i in 0..masks.len() {
            for j in (i + 1)..masks.len() {
                let u = masks[i] | masks[j];
                if !masks.contains(&u) {
                    union_violation = Some(UnionViolation {
                        subfamily: vec![from_mask(masks[i]), from_mask(masks[j])],
                        union: from_mask(u),
                    });
                    break 'pairs;
                }
            }
        }
    }

    // finite intersections: pairwise suffices by induction
    let mut intersection_violation = None;
    'ipairs: for i in 0..masks.len() {
        for j in (i + 1)..masks.len() {
            let m = masks[i] & masks[j];
            if !masks.contains(&m) {
                intersection_violation = Some(IntersectionViolation {
                    left: from_mask(masks[i]),
                    right: from_mask(masks[j]),
                    intersection: from_mask(m),
                });
                break 'ipairs;
            }
        }
    }

    Ok(AxiomReport {
        mode,
        missing_empty,
        missing_universe,
        union_violation,
        intersection_violation,
    })
}
