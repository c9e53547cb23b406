//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! Everything here runs on exact arithmetic; every comparison is equality or
//! an exact order check (tolerance zero).

mod common;

use num::{BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;
use topo_cli::parser::parse;
use topo_core::continuity::{check_continuity, ContinuityVerdict, StepFunction};
use topo_core::enumeration::build_paper_u;
use topo_core::measure::measure_bounds;
use topo_core::membership::Membership;
use topo_core::topology::{
    is_open, replay, verify_axioms, OpennessVerdict, RuleId, TopologySpec, UnionMode,
};
use topo_core::{decompose_open, member, ExtRat, Interval, MeasureValue, Point, Rat, SetExpr};

fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

fn paper_u_1() -> SetExpr {
    build_paper_u(Rat::one()).unwrap()
}

fn json_rat(v: &serde_json::Value) -> Rat {
    let num: num::BigInt = v["num"].as_str().unwrap().parse().unwrap();
    let den: num::BigInt = v["den"].as_str().unwrap().parse().unwrap();
    BigRational::new(num, den)
}

#[test]
fn criterion_1_theorem1_end_to_end() {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_topo"))
        .args(["theorem1", "--a", "1", "--terms", "1000", "--json"])
        .env_remove("TOPO_DEFAULT_TERMS")
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        output.status.success(),
        "exit status: {:?}\nstderr: {}",
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("well-formed JSON");

    // (i) continuous on michael with exactly the four indicator cases
    assert_eq!(report["michael"]["verdict"], "Continuous");
    assert_eq!(report["michael"]["cases"].as_array().unwrap().len(), 4);

    // (ii) discontinuous on michaelC, witness V = (-1/2, 1/2), R1 on R\U
    assert_eq!(report["michaelC"]["verdict"], "Discontinuous");
    let witness = &report["michaelC"]["witness"];
    assert_eq!(json_rat(&witness["interval"]["lo"]), rat(-1, 2));
    assert_eq!(json_rat(&witness["interval"]["hi"]), rat(1, 2));
    assert_eq!(witness["openness"]["rule"], "R1");
    assert_eq!(witness["openness"]["verdict"], "NotOpen");

    // (iii) measure bounds 1/2 <= lambda(U) <= 1, exactly
    let lower = json_rat(&report["measure"]["lower"]);
    let upper = json_rat(&report["measure"]["upper"]);
    assert!(lower >= rat(1, 2), "lower = {lower}");
    assert!(lower <= upper);
    assert_eq!(upper, rat(1, 1));

    assert_eq!(report["outcome"], "all-hold");
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "theorem1 took {elapsed:?}, budget is 5s"
    );
    println!("criterion 1 (theorem1 end-to-end, {elapsed:?}): PASS");
}

#[test]
fn criterion_2_measure_chain() {
    let u = paper_u_1();
    let mut previous_lower = MeasureValue::Finite(Rat::zero());
    for n in [1u32, 10, 100, 1000] {
        let b = measure_bounds(&u, n).unwrap();
        assert!(b.lower >= previous_lower, "lower nondecreasing at {n}");
        assert_eq!(b.upper, MeasureValue::Finite(Rat::one()), "upper at {n}");
        assert!(
            b.lower >= MeasureValue::Finite(rat(1, 2)),
            "s_1 = 1/2 <= lower at {n}"
        );
        assert!(b.lower <= MeasureValue::Finite(Rat::one()));
        previous_lower = b.lower;
    }
    println!("criterion 2 (measure chain at N = 1, 10, 100, 1000): PASS");
}

#[test]
fn criterion_3_irrationals_openness_pair() {
    let ii = SetExpr::Irrationals;
    let michael = is_open(&ii, TopologySpec::MICHAEL, 1000);
    assert_eq!(michael.verdict, OpennessVerdict::Open);
    replay(&michael, &ii).expect("michael certificate replays");

    let michael_c = is_open(&ii, TopologySpec::MICHAEL_C, 1000);
    assert_eq!(michael_c.verdict, OpennessVerdict::NotOpen);
    assert_eq!(michael_c.rule, RuleId::R1);
    replay(&michael_c, &ii).expect("michaelC certificate replays");
    println!("criterion 3 (R\\Q open in michael, NotOpen by R1 in michaelC): PASS");
}

/// Exact membership of k/grid_den in (lo, hi) using i64 cross products; all
/// magnitudes stay far below overflow at criterion-4 scale.
fn fast_contains(iv: &(i64, i64, i64, i64), k: i64, grid_den: i64) -> bool {
    let (ln, ld, hn, hd) = *iv;
    ln * grid_den < k * ld && k * hd < hn * grid_den
}

#[test]
fn criterion_4_decomposition_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let eps = rat(1, 1024);
    for case in 0..1000 {
        let count = rng.gen_range(1..=20);
        let mut raw = Vec::with_capacity(count);
        let mut fast = Vec::with_capacity(count);
        for _ in 0..count {
            let ln = rng.gen_range(-50i64..=50);
            let ld = rng.gen_range(1i64..=50);
            let hn = rng.gen_range(-50i64..=50);
            let hd = rng.gen_range(1i64..=50);
            raw.push(Interval::rational(rat(ln, ld), rat(hn, hd)));
            fast.push((ln, ld, hn, hd));
        }
        let input = SetExpr::FiniteUnion(raw.iter().cloned().map(SetExpr::Ival).collect());
        let d = decompose_open(&input, 8).unwrap();
        let canonical = &d.canonical;

        // pairwise disjoint and sorted
        for w in canonical.intervals.windows(2) {
            assert!(w[0].hi <= w[1].lo, "case {case}: overlap");
        }

        // maximality under 1/1024-extension probes: the endpoint itself lies
        // in every extension and must be outside the set; the extension
        // midpoint must also be outside unless another component sits within
        // probe reach
        for (i, iv) in canonical.intervals.iter().enumerate() {
            let (ExtRat::Finite(lo), ExtRat::Finite(hi)) = (&iv.lo, &iv.hi) else {
                continue;
            };
            assert_eq!(
                member(&Point::Rational(lo.clone()), &input, 8),
                Membership::Out,
                "case {case}: left endpoint inside set"
            );
            assert_eq!(
                member(&Point::Rational(hi.clone()), &input, 8),
                Membership::Out,
                "case {case}: right endpoint inside set"
            );
            let left_blocked = i > 0 && {
                let prev_hi = &canonical.intervals[i - 1].hi;
                *prev_hi > ExtRat::Finite(lo - &eps)
            };
            if !left_blocked {
                let probe = Point::Rational(lo - &eps / rat(2, 1));
                assert_eq!(member(&probe, &input, 8), Membership::Out, "case {case}");
            }
            let right_blocked = i + 1 < canonical.intervals.len() && {
                let next_lo = &canonical.intervals[i + 1].lo;
                *next_lo < ExtRat::Finite(hi + &eps)
            };
            if !right_blocked {
                let probe = Point::Rational(hi + &eps / rat(2, 1));
                assert_eq!(member(&probe, &input, 8), Membership::Out, "case {case}");
            }
        }

        // pointwise equality on the denominator-64 grid over a covering
        // window, via an independent exact i64 oracle
        let canon_fast: Vec<(i64, i64, i64, i64)> = canonical
            .intervals
            .iter()
            .map(|iv| {
                let lo = iv.lo.as_finite().unwrap();
                let hi = iv.hi.as_finite().unwrap();
                (
                    i64::try_from(lo.numer()).unwrap(),
                    i64::try_from(lo.denom()).unwrap(),
                    i64::try_from(hi.numer()).unwrap(),
                    i64::try_from(hi.denom()).unwrap(),
                )
            })
            .collect();
        for k in (-51 * 64)..=(51 * 64) {
            let in_input = fast.iter().any(|iv| fast_contains(iv, k, 64));
            let in_output = canon_fast.iter().any(|iv| fast_contains(iv, k, 64));
            assert_eq!(in_input, in_output, "case {case}: grid point {k}/64");
            // cross-check the official membership on a thinned subsample
            if k % 64 == 0 {
                let x = Point::Rational(rat(k, 64));
                assert_eq!(
                    member(&x, &input, 8) == Membership::In,
                    in_input,
                    "case {case}: official member at {k}/64"
                );
            }
        }

        // distinct interior rational witnesses, one per interval
        assert_eq!(d.witnesses.len(), canonical.intervals.len());
        let distinct: BTreeSet<_> = d.witnesses.iter().collect();
        assert_eq!(distinct.len(), d.witnesses.len(), "case {case}");
        for (iv, w) in canonical.intervals.iter().zip(&d.witnesses) {
            assert!(iv.contains_rat(w), "case {case}: witness outside interval");
        }
    }
    println!("criterion 4 (1000 random decompositions vs grid oracle): PASS");
}

#[test]
fn criterion_5_usual_mode_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let check = |s: &SetExpr| {
        let a = is_open(s, TopologySpec::USUAL, 64);
        let c = is_open(s, TopologySpec::USUAL_C, 64);
        assert_eq!(a.verdict, c.verdict, "verdicts differ on {s}");
    };
    for _ in 0..500 {
        let count = rng.gen_range(0..=8);
        let parts: Vec<SetExpr> = (0..count)
            .map(|_| SetExpr::Ival(common::random_interval(&mut rng, 30, 12)))
            .collect();
        check(&SetExpr::FiniteUnion(parts));
    }
    check(&paper_u_1());
    println!("criterion 5 (usual vs usualC verdicts identical on 500 unions + paperU): PASS");
}

/// A random step function whose regions are finite interval unions,
/// pairwise disjoint by construction: segments between sorted breakpoints
/// are dealt out among the pieces and the default.
fn random_step_function(rng: &mut ChaCha8Rng) -> StepFunction {
    let mut cuts: Vec<Rat> = (0..rng.gen_range(2..=6))
        .map(|_| common::random_rat(rng, 16, 8))
        .collect();
    cuts.sort();
    cuts.dedup();
    let piece_count = rng.gen_range(1..=2);
    let mut regions: Vec<Vec<Interval>> = vec![Vec::new(); piece_count];
    for w in cuts.windows(2) {
        let owner = rng.gen_range(0..=piece_count); // piece_count = default
        if owner < piece_count {
            regions[owner].push(Interval::rational(w[0].clone(), w[1].clone()));
        }
    }
    let pieces = regions
        .into_iter()
        .enumerate()
        .map(|(i, ivs)| {
            let set = SetExpr::FiniteUnion(ivs.into_iter().map(SetExpr::Ival).collect());
            (set, rat(i as i64 + 1, 1))
        })
        .collect();
    StepFunction::new(pieces, Rat::zero())
}

#[test]
fn criterion_6_fineness_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0u32;
    for _ in 0..200 {
        let f = random_step_function(&mut rng);
        let usual = check_continuity(&f, TopologySpec::USUAL, 16).verdict;
        let michael = check_continuity(&f, TopologySpec::MICHAEL, 16).verdict;
        let michael_c = check_continuity(&f, TopologySpec::MICHAEL_C, 16).verdict;
        if usual == ContinuityVerdict::Continuous && michael != ContinuityVerdict::Continuous {
            violations += 1;
        }
        if michael_c == ContinuityVerdict::Continuous && michael != ContinuityVerdict::Continuous {
            violations += 1;
        }
    }
    assert_eq!(violations, 0);
    println!("criterion 6 (fineness monotonicity over 200 step functions): PASS");
}

#[test]
fn criterion_7_axiom_verifier_census() {
    // all collections of subsets of {1,2,3} that contain {} and X: the six
    // remaining subsets are free, giving 2^6 collections
    let universe = [1u32, 2, 3];
    let free: Vec<u32> = (1..7).collect(); // masks of the 6 proper nonempty non-full subsets
    let from_mask = |m: u32| -> Vec<u32> {
        universe
            .iter()
            .enumerate()
            .filter(|(i, _)| m & (1 << i) != 0)
            .map(|(_, u)| *u)
            .collect()
    };
    let mut valid_count = 0u32;
    for picks in 0u32..64 {
        let mut masks: Vec<u32> = vec![0b000, 0b111];
        for (slot, m) in free.iter().enumerate() {
            if picks & (1 << slot) != 0 {
                masks.push(*m);
            }
        }
        let collection: Vec<Vec<u32>> = masks.iter().map(|m| from_mask(*m)).collect();

        // independent oracle: direct pairwise closure over the masks
        let closed = masks.iter().all(|a| {
            masks
                .iter()
                .all(|b| masks.contains(&(a | b)) && masks.contains(&(a & b)))
        });

        let arbitrary = verify_axioms(&universe, &collection, UnionMode::Arbitrary).unwrap();
        let countable = verify_axioms(&universe, &collection, UnionMode::Countable).unwrap();
        assert_eq!(
            arbitrary.is_valid_topology(),
            countable.is_valid_topology(),
            "modes disagree on picks={picks}"
        );
        assert_eq!(
            arbitrary.union_violation.is_some(),
            countable.union_violation.is_some()
        );
        assert_eq!(
            arbitrary.is_valid_topology(),
            closed,
            "verifier disagrees with the closure oracle on picks={picks}"
        );
        if arbitrary.is_valid_topology() {
            valid_count += 1;
        }
    }
    assert_eq!(valid_count, 29, "topologies on a 3-point set");
    println!("criterion 7 (64 collections, modes agree, 29 valid topologies): PASS");
}

#[test]
fn criterion_8_parser_robustness() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100_000 {
        let len = rng.gen_range(0..48);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let text = String::from_utf8_lossy(&bytes);
        // structured diagnostics only; a panic would abort the test
        let _ = parse(&text);
    }
    let mut ok = 0u32;
    for case in 0..100 {
        let script = common::random_script(&mut rng);
        let rendered = script.to_string();
        let reparsed = parse(&rendered).unwrap_or_else(|e| panic!("case {case}: {e}\n{rendered}"));
        assert_eq!(reparsed, script, "case {case}");
        ok += 1;
    }
    assert_eq!(ok, 100);
    println!("criterion 8 (100000 fuzz inputs, 100 round-trips): PASS");
}
