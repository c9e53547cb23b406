//! Deterministic random generators shared by the integration suites.
#![allow(dead_code)]

use num::BigRational;
use rand::Rng;
use topo_cli::ast::{FuncAst, Query, Rhs, Script, SetAst, Statement, TopoAst};
use topo_core::topology::{TopologySpec, UnionMode};
use topo_core::{ExtRat, Interval, Point, Rat};

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

pub fn random_rat<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rat {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    rat(n, d)
}

pub fn random_interval<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Interval {
    Interval::rational(
        random_rat(rng, max_num, max_den),
        random_rat(rng, max_num, max_den),
    )
}

pub fn random_point<R: Rng>(rng: &mut R) -> Point {
    if rng.gen_bool(0.5) {
        Point::Rational(random_rat(rng, 12, 8))
    } else {
        let d = *[2u64, 3, 5, 6, 7].get(rng.gen_range(0..5)).unwrap();
        Point::surd(random_rat(rng, 6, 4), random_rat(rng, 6, 4), d)
    }
}

fn random_ext<R: Rng>(rng: &mut R) -> ExtRat {
    match rng.gen_range(0..10) {
        0 => ExtRat::NegInf,
        1 => ExtRat::PosInf,
        _ => ExtRat::Finite(random_rat(rng, 10, 6)),
    }
}

pub fn random_set_ast<R: Rng>(rng: &mut R, depth: u32, names: &[String]) -> SetAst {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        match rng.gen_range(0..10) {
            0 => SetAst::Empty,
            1 => SetAst::Full,
            2 => SetAst::Rationals,
            3 => SetAst::Irrationals,
            4 => SetAst::Single(random_point(rng)),
            5 => SetAst::PaperU(rat(rng.gen_range(1..=4), rng.gen_range(1..=3))),
            6 if !names.is_empty() => SetAst::Ident(names[rng.gen_range(0..names.len())].clone()),
            _ => SetAst::Ival(Interval::new(random_ext(rng), random_ext(rng))),
        }
    } else {
        let l = Box::new(random_set_ast(rng, depth - 1, names));
        let r = Box::new(random_set_ast(rng, depth - 1, names));
        match rng.gen_range(0..3) {
            0 => SetAst::Union(l, r),
            1 => SetAst::Intersect(l, r),
            _ => SetAst::Complement(l),
        }
    }
}

fn random_topo<R: Rng>(rng: &mut R) -> TopoAst {
    TopoAst::Named(TopologySpec::all()[rng.gen_range(0..4)])
}

fn random_terms<R: Rng>(rng: &mut R) -> Option<u32> {
    if rng.gen_bool(0.5) {
        Some(rng.gen_range(1..=64))
    } else {
        None
    }
}

pub fn random_query<R: Rng>(rng: &mut R, names: &[String]) -> Query {
    match rng.gen_range(0..7) {
        0 => Query::Open {
            set: random_set_ast(rng, 2, names),
            topo: random_topo(rng),
            terms: random_terms(rng),
        },
        1 => Query::Measure {
            set: random_set_ast(rng, 2, names),
            terms: random_terms(rng),
        },
        2 => Query::Member {
            point: random_point(rng),
            set: random_set_ast(rng, 2, names),
            terms: random_terms(rng),
        },
        3 => Query::Decompose {
            set: random_set_ast(rng, 1, names),
            terms: random_terms(rng),
        },
        4 => Query::Continuous {
            func: FuncAst::Indicator(random_set_ast(rng, 1, names)),
            topo: random_topo(rng),
            terms: random_terms(rng),
        },
        5 => {
            let universe: Vec<u32> = (1..=rng.gen_range(1..4)).collect();
            let mut collection = vec![Vec::new(), universe.clone()];
            for _ in 0..rng.gen_range(0..3) {
                let subset: Vec<u32> = universe
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                collection.push(subset);
            }
            Query::Axioms {
                universe,
                collection,
                mode: if rng.gen_bool(0.5) {
                    UnionMode::Arbitrary
                } else {
                    UnionMode::Countable
                },
            }
        }
        _ => Query::Theorem1 {
            a: if rng.gen_bool(0.5) {
                Some(rat(rng.gen_range(1..=3), rng.gen_range(1..=2)))
            } else {
                None
            },
            terms: random_terms(rng),
        },
    }
}

/// A random well-formed script: a few set bindings followed by queries that
/// may reference them.
pub fn random_script<R: Rng>(rng: &mut R) -> Script {
    let mut statements = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for i in 0..rng.gen_range(0..3) {
        let name = format!("s{i}");
        statements.push(Statement::Let {
            name: name.clone(),
            rhs: Rhs::Set(random_set_ast(rng, 2, &names)),
        });
        names.push(name);
    }
    if rng.gen_bool(0.3) {
        statements.push(Statement::Let {
            name: "f0".to_string(),
            rhs: Rhs::Func(FuncAst::Indicator(random_set_ast(rng, 1, &names))),
        });
    }
    if rng.gen_bool(0.3) {
        statements.push(Statement::Let {
            name: "t0".to_string(),
            rhs: Rhs::Topo(random_topo(rng)),
        });
    }
    for _ in 0..rng.gen_range(1..5) {
        statements.push(Statement::Query(random_query(rng, &names)));
    }
    Script { statements }
}
