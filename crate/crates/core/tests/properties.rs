//! Property tests for the exact-set, enumeration, measure, and topology
//! invariants.

use num::{BigRational, FromPrimitive};
use proptest::prelude::*;
use topo_core::enumeration::{build_paper_u, index_of, nth_rational};
use topo_core::measure::measure_bounds;
use topo_core::membership::Membership;
use topo_core::sets::rational_grid;
use topo_core::topology::{is_open, replay, OpennessVerdict, TopologySpec, UnionMode};
use topo_core::{
    complement, decompose_open, intersect, member, normalize, union, ExtRat, Interval, Point, Rat,
    SetExpr,
};

fn rat_of(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=24).prop_map(|(n, d)| rat_of(n, d))
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (arb_rat(), arb_rat()).prop_map(|(a, b)| Interval::rational(a, b))
}

fn arb_point() -> impl Strategy<Value = Point> {
    prop_oneof![
        4 => arb_rat().prop_map(Point::Rational),
        2 => (arb_rat(), arb_rat(), prop_oneof![Just(2u64), Just(3), Just(5), Just(7)])
            .prop_map(|(p, c, d)| Point::surd(p, c, d)),
    ]
}

fn arb_leaf() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        1 => Just(SetExpr::Empty),
        1 => Just(SetExpr::Full),
        1 => Just(SetExpr::Rationals),
        1 => Just(SetExpr::Irrationals),
        4 => arb_interval().prop_map(SetExpr::Ival),
        2 => arb_point().prop_map(SetExpr::Single),
        1 => (1i64..=4).prop_map(|a| {
            build_paper_u(BigRational::from_i64(a).unwrap()).unwrap()
        }),
    ]
}

fn arb_setexpr() -> impl Strategy<Value = SetExpr> {
    arb_leaf().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| intersect(a, b)),
            inner.prop_map(complement),
        ]
    })
}

/// Rational enclosure of a point with width below 2^-128, built from the
/// integer square root of d << 256: an oracle route independent of the
/// sign-squaring comparison algorithm.
fn tight_bounds(x: &Point) -> (Rat, Rat) {
    use num::bigint::BigInt;
    match x {
        Point::Rational(r) => (r.clone(), r.clone()),
        Point::Surd { p, c, d } => {
            let shifted = BigInt::from(*d) << 256u16;
            let root = shifted.sqrt(); // floor(sqrt(d) * 2^128)
            let scale = BigInt::from(1) << 128u16;
            let lo = BigRational::new(root.clone(), scale.clone());
            let hi = BigRational::new(root + 1, scale);
            if c > &Rat::from_integer(0.into()) {
                (p + c * lo, p + c * hi)
            } else {
                (p + c * hi, p + c * lo)
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent(ivs in prop::collection::vec(arb_interval(), 0..12)) {
        let once = normalize(&ivs);
        let twice = normalize(&once.intervals);
        prop_assert_eq!(&once.intervals, &twice.intervals);
    }

    #[test]
    fn normalize_preserves_membership_on_grid(ivs in prop::collection::vec(arb_interval(), 0..12)) {
        let canonical = normalize(&ivs);
        for x in rational_grid(-52, 52, 8) {
            let p = Point::Rational(x);
            let direct = ivs.iter().any(|iv| iv.contains_point(&p));
            prop_assert_eq!(canonical.contains_point(&p), direct);
        }
    }

    #[test]
    fn decompose_output_disjoint_maximal(ivs in prop::collection::vec(arb_interval(), 1..10)) {
        let s = SetExpr::FiniteUnion(ivs.iter().cloned().map(SetExpr::Ival).collect());
        let d = decompose_open(&s, 8).unwrap();
        let c = &d.canonical;
        for w in c.intervals.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo, "sorted and disjoint");
        }
        // witnesses interior and distinct
        for (iv, w) in c.intervals.iter().zip(&d.witnesses) {
            prop_assert!(iv.contains_rat(w));
        }
        let mut ws = d.witnesses.clone();
        ws.dedup();
        prop_assert_eq!(ws.len(), d.witnesses.len());
        // endpoints are outside the union: every extension exits the set
        for iv in &c.intervals {
            if let ExtRat::Finite(lo) = &iv.lo {
                prop_assert!(!ivs.iter().any(|i| i.contains_rat(lo)));
            }
            if let ExtRat::Finite(hi) = &iv.hi {
                prop_assert!(!ivs.iter().any(|i| i.contains_rat(hi)));
            }
        }
    }

    #[test]
    fn membership_monotone_in_truncation(s in arb_setexpr(), x in arb_point(), n in 1u32..8, extra in 1u32..40) {
        let early = member(&x, &s, n);
        let late = member(&x, &s, n + extra);
        match early {
            Membership::In => prop_assert_eq!(late, Membership::In),
            Membership::Out => prop_assert_eq!(late, Membership::Out),
            Membership::Unknown => {}
        }
    }

    #[test]
    fn enumeration_round_trip(n in -100i64..=100, d in 1i64..=100) {
        let q = rat_of(n, d);
        prop_assert_eq!(nth_rational(&index_of(&q)), q);
    }

    #[test]
    fn every_rational_is_in_paper_u(n in -100i64..=100, d in 1i64..=100, a in 1i64..=3) {
        let u = build_paper_u(BigRational::from_i64(a).unwrap()).unwrap();
        let q = Point::Rational(rat_of(n, d));
        prop_assert_eq!(member(&q, &u, 1), Membership::In);
    }

    #[test]
    fn measure_bounds_monotone(num in 1i64..=5, den in 1i64..=3, n in 1u32..30) {
        let u = build_paper_u(rat_of(num, den)).unwrap();
        let b1 = measure_bounds(&u, n).unwrap();
        let b2 = measure_bounds(&u, n + 1).unwrap();
        prop_assert!(b1.lower <= b2.lower);
        prop_assert!(b2.upper <= b1.upper);
        prop_assert!(b2.lower <= b2.upper);
    }

    #[test]
    fn openness_mode_monotone_and_replayable(s in arb_setexpr(), n in 2u32..10) {
        for t in TopologySpec::all() {
            let cert = is_open(&s, t, n);
            replay(&cert, &s).unwrap();
            if t.union_mode == UnionMode::Countable
                && cert.verdict == OpennessVerdict::Open
            {
                let arb = is_open(
                    &s,
                    TopologySpec { basis: t.basis, union_mode: UnionMode::Arbitrary },
                    n,
                );
                prop_assert_eq!(arb.verdict, OpennessVerdict::Open);
            }
        }
    }

    #[test]
    fn usual_modes_agree_on_interval_unions(ivs in prop::collection::vec(arb_interval(), 0..8)) {
        let s = SetExpr::FiniteUnion(ivs.into_iter().map(SetExpr::Ival).collect());
        let a = is_open(&s, TopologySpec::USUAL, 6);
        let c = is_open(&s, TopologySpec::USUAL_C, 6);
        prop_assert_eq!(a.verdict, c.verdict);
        prop_assert_eq!(a.verdict, OpennessVerdict::Open);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn member_respects_boolean_structure(a in arb_setexpr(), b in arb_setexpr(), x in arb_point(), n in 1u32..6) {
        let ma = member(&x, &a, n);
        let mb = member(&x, &b, n);
        prop_assert_eq!(member(&x, &union(a.clone(), b.clone()), n), ma.or(mb));
        prop_assert_eq!(member(&x, &intersect(a.clone(), b.clone()), n), ma.and(mb));
        prop_assert_eq!(member(&x, &complement(a.clone()), n), ma.not());
        // three-valued De Morgan
        prop_assert_eq!(
            member(&x, &complement(union(a.clone(), b.clone())), n),
            member(&x, &intersect(complement(a), complement(b)), n)
        );
    }

    #[test]
    fn enumeration_round_trip_dense(n in -100i64..=100, d in 1i64..=100) {
        let q = rat_of(n, d);
        prop_assert_eq!(nth_rational(&index_of(&q)), q);
    }

    #[test]
    fn point_order_matches_enclosure_oracle(a in arb_point(), b in arb_point()) {
        use std::cmp::Ordering;
        let (alo, ahi) = tight_bounds(&a);
        let (blo, bhi) = tight_bounds(&b);
        let exact = a.cmp(&b);
        if ahi < blo {
            prop_assert_eq!(exact, Ordering::Less);
        } else if alo > bhi {
            prop_assert_eq!(exact, Ordering::Greater);
        } else {
            // enclosures this tight only overlap when the points coincide
            prop_assert_eq!(exact, Ordering::Equal);
        }
        // floor agrees with the enclosure
        let fl = BigRational::from_integer(a.floor_int());
        prop_assert!(fl <= ahi);
        prop_assert!(&fl + rat_of(1, 1) > alo);
    }

    #[test]
    fn between_stays_inside(a in arb_point(), b in arb_point()) {
        use std::cmp::Ordering;
        use topo_core::point::{irrational_strictly_between, rational_strictly_between};
        if a.cmp(&b) == Ordering::Less {
            let m = rational_strictly_between(&a, &b);
            prop_assert_eq!(a.cmp_rat(&m), Ordering::Less);
            prop_assert_eq!(b.cmp_rat(&m), Ordering::Greater);
            let i = irrational_strictly_between(&a, &b);
            prop_assert!(!i.is_rational());
            prop_assert!(a < i && i < b);
        }
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<SetExpr>();
    assert_send_sync::<Point>();
    assert_send_sync::<topo_core::CanonicalIntervalSet>();
    assert_send_sync::<topo_core::topology::OpennessCertificate>();
    assert_send_sync::<topo_core::continuity::ContinuityCertificate>();
}

#[test]
fn parallel_queries_match_sequential() {
    use topo_core::enumeration::build_paper_u;
    use topo_core::Membership;
    let u = std::sync::Arc::new(build_paper_u(rat_of(1, 1)).unwrap());
    let sequential: Vec<Membership> = (1..=16i64)
        .map(|k| member(&Point::Rational(rat_of(k, 7)), &u, 32))
        .collect();
    let handles: Vec<_> = (1..=16i64)
        .map(|k| {
            let u = std::sync::Arc::clone(&u);
            std::thread::spawn(move || member(&Point::Rational(rat_of(k, 7)), &u, 32))
        })
        .collect();
    let parallel: Vec<Membership> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert_eq!(sequential, parallel);
}
