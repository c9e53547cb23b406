//! Step functions ℝ → ℝ and the certified continuity checker.
//!
//! Continuity is checked through preimages of codomain basis intervals. For a
//! step function with k distinct values only finitely many preimages can
//! occur: an open interval V pulls back to the union of the regions whose
//! values lie in V (plus the complement of the excluded regions when the
//! default value lies in V). Since an interval picks out a consecutive run of
//! values, the checker enumerates one canonical representative interval per
//! realizable value class and runs the openness certifier on each preimage.
//! For an indicator function the classes are exactly the four cases
//! U, ℝ∖U, ℝ, ∅.

use crate::interval::Interval;
use crate::membership::Membership;
use crate::point::Point;
use crate::rational::{fmt_rat, rat, rat_int, Rat};
use crate::sets::{complement, member, union, SetExpr};
use crate::topology::{
    is_open, replay as replay_openness, OpennessCertificate, OpennessVerdict, ReplayError,
    TopologySpec,
};
use num::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// A finite-valued function ℝ → ℝ: finitely many (region, value) pieces plus
/// a default value for points in no region. Regions must be pairwise disjoint
/// (three-valued membership never answers In for two regions at one point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    pub pieces: Vec<(SetExpr, Rat)>,
    pub default: Rat,
}

impl StepFunction {
    pub fn new(pieces: Vec<(SetExpr, Rat)>, default: Rat) -> Self {
        StepFunction { pieces, default }
    }

    /// The indicator of `u`: 1 on u, 0 elsewhere.
    pub fn indicator(u: SetExpr) -> Self {
        StepFunction {
            pieces: vec![(u, Rat::one())],
            default: Rat::zero(),
        }
    }

    pub fn constant(v: Rat) -> Self {
        StepFunction {
            pieces: Vec::new(),
            default: v,
        }
    }

    /// Sorted distinct values the function can take.
    pub fn values(&self) -> Vec<Rat> {
        let mut vs: Vec<Rat> = self.pieces.iter().map(|(_, v)| v.clone()).collect();
        vs.push(self.default.clone());
        vs.sort();
        vs.dedup();
        vs
    }

    /// Exact value at `x` when every region membership is decisive.
    pub fn value_at(&self, x: &Point, n: u32) -> Option<Rat> {
        let mut all_out = true;
        for (region, v) in &self.pieces {
            match member(x, region, n) {
                Membership::In => return Some(v.clone()),
                Membership::Out => {}
                Membership::Unknown => all_out = false,
            }
        }
        if all_out {
            Some(self.default.clone())
        } else {
            None
        }
    }
}

/// Exact symbolic preimage of the open interval `v`: the union of regions
/// whose value lies in v, completed by the complement of the excluded
/// regions when the default value lies in v. For an indicator of U this
/// reproduces exactly the four cases U, ℝ∖U, ℝ, ∅.
pub fn preimage(f: &StepFunction, v: &Interval) -> SetExpr {
    if v.contains_rat(&f.default) {
        let mut excluded = SetExpr::Empty;
        for (region, val) in &f.pieces {
            if !v.contains_rat(val) {
                excluded = union(excluded, region.clone());
            }
        }
        complement(excluded)
    } else {
        let mut included = SetExpr::Empty;
        for (region, val) in &f.pieces {
            if v.contains_rat(val) {
                included = union(included, region.clone());
            }
        }
        included
    }
}

/// One equivalence class of codomain basis intervals, keyed by which function
/// values the interval contains (a consecutive run of the sorted values).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityCase {
    /// Values contained in the class, ascending; empty for the no-value class.
    pub value_class: Vec<Rat>,
    /// Bitmask of the class over the sorted distinct values; cases are
    /// enumerated in ascending bitmask order, which fixes the reported
    /// discontinuity witness deterministically.
    pub bitmask: u32,
    /// Canonical representative interval of the class.
    pub representative: Interval,
    pub preimage: SetExpr,
    pub openness: OpennessCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ContinuityVerdict {
    Continuous,
    Discontinuous,
    Unknown,
}

impl fmt::Display for ContinuityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuityVerdict::Continuous => write!(f, "Continuous"),
            ContinuityVerdict::Discontinuous => write!(f, "Discontinuous"),
            ContinuityVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Verdict plus one replayable openness certificate per value class; for a
/// discontinuity, the witness is the first class (in enumeration order)
/// whose preimage certifies NotOpen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityCertificate {
    pub verdict: ContinuityVerdict,
    pub domain: TopologySpec,
    pub truncation: u32,
    pub cases: Vec<ContinuityCase>,
    pub witness: Option<usize>,
}

impl ContinuityCertificate {
    pub fn witness_case(&self) -> Option<&ContinuityCase> {
        self.witness.map(|i| &self.cases[i])
    }
}

/// Enumerates the realizable value classes for the sorted distinct `values`:
/// the empty class plus every consecutive run, each with its canonical
/// representative interval. Representatives step half a gap beyond the run
/// (half a unit at the extremes), so for an indicator the {0} class is
/// represented by (-1/2, 1/2).
fn value_classes(values: &[Rat]) -> Vec<(u32, Vec<Rat>, Interval)> {
    let mut out = Vec::new();
    // empty class: an interval strictly below every value
    let below = match values.first() {
        Some(v) => v - rat_int(1),
        None => Rat::zero(),
    };
    out.push((
        0u32,
        Vec::new(),
        Interval::rational(&below - rat_int(1), below.clone()),
    ));
    for i in 0..values.len() {
        for j in i..values.len() {
            let mut mask = 0u32;
            for k in i..=j {
                mask |= 1 << k;
            }
            let lo = if i == 0 {
                &values[0] - rat(1, 2)
            } else {
                (&values[i - 1] + &values[i]) / rat_int(2)
            };
            let hi = if j + 1 == values.len() {
                &values[j] + rat(1, 2)
            } else {
                (&values[j] + &values[j + 1]) / rat_int(2)
            };
            out.push((mask, values[i..=j].to_vec(), Interval::rational(lo, hi)));
        }
    }
    out.sort_by_key(|(mask, _, _)| *mask);
    out
}

/// Certified continuity of `f` from `domain` into ℝ with the usual topology:
/// Continuous iff every value class's preimage certifies Open; Discontinuous
/// at the first NotOpen class; Unknown when some class is undecided and none
/// is NotOpen.
pub fn check_continuity(f: &StepFunction, domain: TopologySpec, n: u32) -> ContinuityCertificate {
    let values = f.values();
    debug_assert!(values.len() <= 32, "step functions carry few values");
    let mut cases = Vec::new();
    for (bitmask, value_class, representative) in value_classes(&values) {
        let pre = preimage(f, &representative);
        let openness = is_open(&pre, domain, n);
        cases.push(ContinuityCase {
            value_class,
            bitmask,
            representative,
            preimage: pre,
            openness,
        });
    }
    let witness = cases
        .iter()
        .position(|c| c.openness.verdict == OpennessVerdict::NotOpen);
    let verdict = if witness.is_some() {
        ContinuityVerdict::Discontinuous
    } else if cases
        .iter()
        .all(|c| c.openness.verdict == OpennessVerdict::Open)
    {
        ContinuityVerdict::Continuous
    } else {
        ContinuityVerdict::Unknown
    };
    ContinuityCertificate {
        verdict,
        domain,
        truncation: n,
        cases,
        witness,
    }
}

#[derive(Debug, Error)]
pub enum ContinuityReplayError {
    #[error("case count mismatch: certificate has {found}, function induces {expected}")]
    CaseCount { expected: usize, found: usize },
    #[error("case {index}: recorded preimage does not recompute")]
    PreimageMismatch { index: usize },
    #[error("case {index}: embedded openness certificate fails: {source}")]
    Openness { index: usize, source: ReplayError },
    #[error("verdict does not follow from the case verdicts")]
    VerdictMismatch,
    #[error("witness is not the first NotOpen case")]
    WitnessOrder,
}

/// Re-verifies a continuity certificate: recomputes every case's preimage,
/// replays each embedded openness certificate, and re-checks the verdict
/// aggregation and witness order.
pub fn replay(cert: &ContinuityCertificate, f: &StepFunction) -> Result<(), ContinuityReplayError> {
    let classes = value_classes(&f.values());
    if classes.len() != cert.cases.len() {
        return Err(ContinuityReplayError::CaseCount {
            expected: classes.len(),
            found: cert.cases.len(),
        });
    }
    for (index, ((mask, _, rep), case)) in classes.iter().zip(&cert.cases).enumerate() {
        if *mask != case.bitmask || *rep != case.representative {
            return Err(ContinuityReplayError::PreimageMismatch { index });
        }
        if preimage(f, rep) != case.preimage {
            return Err(ContinuityReplayError::PreimageMismatch { index });
        }
        replay_openness(&case.openness, &case.preimage)
            .map_err(|source| ContinuityReplayError::Openness { index, source })?;
    }
    let first_not_open = cert
        .cases
        .iter()
        .position(|c| c.openness.verdict == OpennessVerdict::NotOpen);
    if cert.witness != first_not_open {
        return Err(ContinuityReplayError::WitnessOrder);
    }
    let expected = if first_not_open.is_some() {
        ContinuityVerdict::Discontinuous
    } else if cert
        .cases
        .iter()
        .all(|c| c.openness.verdict == OpennessVerdict::Open)
    {
        ContinuityVerdict::Continuous
    } else {
        ContinuityVerdict::Unknown
    };
    if expected != cert.verdict {
        return Err(ContinuityReplayError::VerdictMismatch);
    }
    Ok(())
}

impl Serialize for ContinuityCase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ContinuityCase", 4)?;
        let vals: Vec<String> = self.value_class.iter().map(fmt_rat).collect();
        st.serialize_field("valueClass", &vals)?;
        st.serialize_field("representative", &self.representative)?;
        st.serialize_field("preimage", &self.preimage.to_string())?;
        st.serialize_field("openness", &self.openness)?;
        st.end()
    }
}

impl Serialize for ContinuityCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Witness<'a> {
            interval: &'a Interval,
            openness: &'a OpennessCertificate,
        }
        let mut st = s.serialize_struct("ContinuityCertificate", 5)?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("truncation", &self.truncation)?;
        st.serialize_field("cases", &self.cases)?;
        match self.witness_case() {
            Some(c) => st.serialize_field(
                "witness",
                &Witness {
                    interval: &c.representative,
                    openness: &c.openness,
                },
            )?,
            None => st.serialize_field("witness", &Option::<u32>::None)?,
        }
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::build_paper_u;
    use crate::topology::RuleId;

    fn paper_u_1() -> SetExpr {
        build_paper_u(rat_int(1)).unwrap()
    }

    fn indicator_u() -> StepFunction {
        StepFunction::indicator(paper_u_1())
    }

    #[test]
    fn indicator_preimage_four_cases() {
        let f = indicator_u();
        let u = paper_u_1();
        assert_eq!(preimage(&f, &Interval::rational(rat(1, 2), rat(3, 2))), u);
        assert_eq!(preimage(&f, &Interval::of_ints(-1, 2)), SetExpr::Full);
        assert_eq!(preimage(&f, &Interval::of_ints(2, 3)), SetExpr::Empty);
        assert_eq!(
            preimage(&f, &Interval::rational(rat(-1, 2), rat(1, 2))),
            complement(u)
        );
    }

    #[test]
    fn indicator_of_u_continuous_on_michael() {
        let cert = check_continuity(&indicator_u(), TopologySpec::MICHAEL, 50);
        assert_eq!(cert.verdict, ContinuityVerdict::Continuous);
        assert_eq!(cert.cases.len(), 4);
        replay(&cert, &indicator_u()).unwrap();
    }

    #[test]
    fn indicator_of_u_discontinuous_on_michael_c() {
        let cert = check_continuity(&indicator_u(), TopologySpec::MICHAEL_C, 50);
        assert_eq!(cert.verdict, ContinuityVerdict::Discontinuous);
        let case = cert.witness_case().expect("witness case");
        assert_eq!(
            case.representative,
            Interval::rational(rat(-1, 2), rat(1, 2))
        );
        assert_eq!(case.preimage, complement(paper_u_1()));
        assert_eq!(case.openness.rule, RuleId::R1);
        replay(&cert, &indicator_u()).unwrap();
    }

    #[test]
    fn indicator_of_interval_discontinuous_on_usual() {
        let f = StepFunction::indicator(SetExpr::Ival(Interval::of_ints(0, 1)));
        let cert = check_continuity(&f, TopologySpec::USUAL, 10);
        assert_eq!(cert.verdict, ContinuityVerdict::Discontinuous);
        let case = cert.witness_case().unwrap();
        assert_eq!(
            case.representative,
            Interval::rational(rat(-1, 2), rat(1, 2))
        );
        assert_eq!(case.openness.rule, RuleId::R0);
        assert_eq!(
            case.openness.evidence.points,
            Some(vec![Point::from_int(0)])
        );
        replay(&cert, &f).unwrap();
    }

    #[test]
    fn constant_functions_continuous_everywhere() {
        let f = StepFunction::constant(Rat::zero());
        for t in TopologySpec::all() {
            let cert = check_continuity(&f, t, 5);
            assert_eq!(cert.verdict, ContinuityVerdict::Continuous, "{t}");
            replay(&cert, &f).unwrap();
        }
    }

    #[test]
    fn class_enumeration_for_indicator() {
        let classes = value_classes(&[Rat::zero(), Rat::one()]);
        assert_eq!(classes.len(), 4);
        let masks: Vec<u32> = classes.iter().map(|(m, _, _)| *m).collect();
        assert_eq!(masks, vec![0b00, 0b01, 0b10, 0b11]);
        // {0} is represented by (-1/2, 1/2)
        assert_eq!(classes[1].2, Interval::rational(rat(-1, 2), rat(1, 2)));
        // {1} is represented by (1/2, 3/2)
        assert_eq!(classes[2].2, Interval::rational(rat(1, 2), rat(3, 2)));
    }

    #[test]
    fn three_values_skip_nonconsecutive_runs() {
        let vals = [Rat::zero(), Rat::one(), rat_int(2)];
        let classes = value_classes(&vals);
        // empty + 6 consecutive runs; {0,2} is not realizable by an interval
        assert_eq!(classes.len(), 7);
        assert!(classes.iter().all(|(m, _, _)| *m != 0b101));
    }

    #[test]
    fn preimages_of_separating_intervals_are_disjoint() {
        let f = StepFunction::new(
            vec![
                (SetExpr::Ival(Interval::of_ints(0, 1)), Rat::one()),
                (SetExpr::Ival(Interval::of_ints(2, 3)), rat_int(2)),
            ],
            Rat::zero(),
        );
        let v1 = Interval::rational(rat(3, 4), rat(5, 4)); // contains 1 only
        let v2 = Interval::rational(rat(7, 4), rat(9, 4)); // contains 2 only
        let p1 = preimage(&f, &v1);
        let p2 = preimage(&f, &v2);
        for k in -32i64..=128 {
            let x = Point::Rational(rat(k, 32));
            let both_in =
                member(&x, &p1, 4) == Membership::In && member(&x, &p2, 4) == Membership::In;
            assert!(!both_in, "{x} in both preimages");
        }
    }

    #[test]
    fn every_rational_interval_falls_into_exactly_one_class() {
        // sweep intervals with endpoints k/4 over [-2, 3]: the values each
        // contains must match exactly one enumerated class, and the
        // preimage must agree pointwise with the class representative's
        let f = StepFunction::new(
            vec![
                (SetExpr::Ival(Interval::of_ints(0, 1)), Rat::one()),
                (SetExpr::Ival(Interval::of_ints(2, 3)), rat_int(2)),
            ],
            Rat::zero(),
        );
        let values = f.values();
        let classes = value_classes(&values);
        for lo4 in -8i64..=12 {
            for hi4 in lo4 + 1..=12 {
                let v = Interval::rational(rat(lo4, 4), rat(hi4, 4));
                let mask = values.iter().enumerate().fold(0u32, |m, (k, val)| {
                    if v.contains_rat(val) {
                        m | (1 << k)
                    } else {
                        m
                    }
                });
                let matching: Vec<_> = classes.iter().filter(|(m, _, _)| *m == mask).collect();
                assert_eq!(matching.len(), 1, "mask {mask:b} for V = {v}");
                let rep_pre = preimage(&f, &matching[0].2);
                let v_pre = preimage(&f, &v);
                for k in -16i64..=64 {
                    let x = Point::Rational(rat(k, 16));
                    assert_eq!(
                        member(&x, &v_pre, 4),
                        member(&x, &rep_pre, 4),
                        "V = {v} at {k}/16"
                    );
                }
            }
        }
    }

    #[test]
    fn certificate_json_shape() {
        let cert = check_continuity(&indicator_u(), TopologySpec::MICHAEL_C, 10);
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["verdict"], "Discontinuous");
        assert_eq!(json["domain"]["basis"], "michael");
        assert_eq!(json["domain"]["unionMode"], "countable");
        let cases = json["cases"].as_array().unwrap();
        assert_eq!(cases.len(), 4);
        for case in cases {
            assert!(case["valueClass"].is_array());
            assert!(case["preimage"].is_string());
            assert!(case["openness"]["verdict"].is_string());
        }
        assert_eq!(json["witness"]["openness"]["rule"], "R1");
        let cont = check_continuity(&StepFunction::constant(Rat::zero()), TopologySpec::USUAL, 5);
        let json = serde_json::to_value(&cont).unwrap();
        assert!(json["witness"].is_null());
    }

    #[test]
    fn value_at_respects_pieces() {
        let f = StepFunction::indicator(SetExpr::Ival(Interval::of_ints(0, 1)));
        assert_eq!(f.value_at(&Point::Rational(rat(1, 2)), 4), Some(Rat::one()));
        assert_eq!(f.value_at(&Point::from_int(5), 4), Some(Rat::zero()));
        // unknown region membership propagates to an unknown value
        let g = indicator_u();
        assert_eq!(g.value_at(&Point::sqrt(2), 10), None);
        assert_eq!(g.value_at(&Point::Rational(rat(1, 3)), 1), Some(Rat::one()));
    }
}
