//! Statement evaluation: lowers AST nodes onto core set expressions and runs
//! queries. Output is deterministic text, one block per statement.

use crate::ast::{FuncAst, Query, Rhs, SetAst, Statement, TopoAst};
use crate::render;
use crate::theorem1::{self, Theorem1Outcome};
use std::collections::BTreeMap;
use thiserror::Error;
use topo_core::continuity::{check_continuity, StepFunction};
use topo_core::enumeration::{build_paper_u, EnumerationError};
use topo_core::measure::{measure_bounds, MeasureShapeError};
use topo_core::sets::DecomposeError;
use topo_core::topology::{is_open, verify_axioms, AxiomInputError, TopologySpec};
use topo_core::{complement, decompose_open, intersect, member, union, SetExpr};

pub const FALLBACK_TERMS: u32 = 1000;

/// Reads the default truncation from TOPO_DEFAULT_TERMS, falling back to
/// 1000.
pub fn default_terms_from_env() -> u32 {
    std::env::var("TOPO_DEFAULT_TERMS")
        .ok()
        .and_then(|v| v.parse::<u32>().ok())
        .filter(|n| *n >= 1)
        .unwrap_or(FALLBACK_TERMS)
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown name '{0}'")]
    UnknownName(String),
    #[error("{0}")]
    Measure(#[from] MeasureShapeError),
    #[error("{0}")]
    Decompose(#[from] DecomposeError),
    #[error("{0}")]
    Enumeration(#[from] EnumerationError),
    #[error("{0}")]
    Axioms(#[from] AxiomInputError),
}

#[derive(Default)]
pub struct Env {
    sets: BTreeMap<String, SetExpr>,
    funcs: BTreeMap<String, StepFunction>,
    topos: BTreeMap<String, TopologySpec>,
    pub default_terms: u32,
}

impl Env {
    pub fn new(default_terms: u32) -> Self {
        Env {
            default_terms,
            ..Env::default()
        }
    }

    pub fn lower_set(&self, ast: &SetAst) -> Result<SetExpr, EvalError> {
        Ok(match ast {
            SetAst::Empty => SetExpr::Empty,
            SetAst::Full => SetExpr::Full,
            SetAst::Rationals => SetExpr::Rationals,
            SetAst::Irrationals => SetExpr::Irrationals,
            SetAst::Ival(iv) => SetExpr::Ival(iv.clone()),
            SetAst::Single(p) => SetExpr::Single(p.clone()),
            SetAst::PaperU(a) => build_paper_u(a.clone())?,
            SetAst::Ident(name) => self
                .sets
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnknownName(name.clone()))?,
            SetAst::Union(l, r) => union(self.lower_set(l)?, self.lower_set(r)?),
            SetAst::Intersect(l, r) => intersect(self.lower_set(l)?, self.lower_set(r)?),
            SetAst::Complement(inner) => complement(self.lower_set(inner)?),
        })
    }

    pub fn lower_func(&self, ast: &FuncAst) -> Result<StepFunction, EvalError> {
        match ast {
            FuncAst::Indicator(set) => Ok(StepFunction::indicator(self.lower_set(set)?)),
            FuncAst::Ident(name) => self
                .funcs
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnknownName(name.clone())),
        }
    }

    pub fn lower_topo(&self, ast: &TopoAst) -> Result<TopologySpec, EvalError> {
        match ast {
            TopoAst::Named(t) => Ok(*t),
            TopoAst::Ident(name) => self
                .topos
                .get(name)
                .copied()
                .ok_or_else(|| EvalError::UnknownName(name.clone())),
        }
    }
}

/// Result of one statement: rendered text (empty for lets) and, for
/// theorem1 queries, the assertion outcome that drives the exit code.
pub struct StatementOutput {
    pub text: String,
    pub theorem1: Option<Theorem1Outcome>,
}

pub fn execute(env: &mut Env, statement: &Statement) -> Result<StatementOutput, EvalError> {
    match statement {
        Statement::Let { name, rhs } => {
            match rhs {
                Rhs::Set(ast) => {
                    let v = env.lower_set(ast)?;
                    env.sets.insert(name.clone(), v);
                }
                Rhs::Func(ast) => {
                    let v = env.lower_func(ast)?;
                    env.funcs.insert(name.clone(), v);
                }
                Rhs::Topo(ast) => {
                    let v = env.lower_topo(ast)?;
                    env.topos.insert(name.clone(), v);
                }
            }
            Ok(StatementOutput {
                text: String::new(),
                theorem1: None,
            })
        }
        Statement::Query(q) => execute_query(env, q),
    }
}

fn execute_query(env: &mut Env, q: &Query) -> Result<StatementOutput, EvalError> {
    let terms_of = |terms: &Option<u32>| terms.unwrap_or(env.default_terms);
    let mut theorem1_outcome = None;
    let text = match q {
        Query::Open { set, topo, terms } => {
            let s = env.lower_set(set)?;
            let t = env.lower_topo(topo)?;
            let cert = is_open(&s, t, terms_of(terms));
            render::openness_text(&cert, 1)
        }
        Query::Measure { set, terms } => {
            let s = env.lower_set(set)?;
            let b = measure_bounds(&s, terms_of(terms))?;
            render::measure_text(&b, 1)
        }
        Query::Member { point, set, terms } => {
            let s = env.lower_set(set)?;
            let m = member(point, &s, terms_of(terms));
            render::membership_text(m, 1)
        }
        Query::Decompose { set, terms } => {
            let s = env.lower_set(set)?;
            let d = decompose_open(&s, terms_of(terms))?;
            render::decomposition_text(&d, 1)
        }
        Query::Continuous { func, topo, terms } => {
            let f = env.lower_func(func)?;
            let t = env.lower_topo(topo)?;
            let cert = check_continuity(&f, t, terms_of(terms));
            render::continuity_text(&cert, 1)
        }
        Query::Axioms {
            universe,
            collection,
            mode,
        } => {
            let report = verify_axioms(universe, collection, *mode)?;
            render::axioms_text(&report, 1)
        }
        Query::Theorem1 { a, terms } => {
            let a = a.clone().unwrap_or_else(|| from_i64(1));
            let report = theorem1::run(a, terms_of(terms))?;
            theorem1_outcome = Some(report.outcome);
            indent_block(&theorem1::to_text(&report))
        }
    };
    Ok(StatementOutput {
        text,
        theorem1: theorem1_outcome,
    })
}

fn from_i64(n: i64) -> topo_core::Rat {
    num::BigRational::from_integer(n.into())
}

fn indent_block(block: &str) -> String {
    block
        .lines()
        .map(|l| format!("  {l}\n"))
        .collect::<String>()
}

/// Runs a whole script, echoing each query statement before its result.
/// Returns the rendered transcript and the exit code: 0 when all theorem1
/// assertions hold (or none ran), 1 on an assertion failure, 2 when some
/// theorem1 run was inconclusive.
pub fn run_script(env: &mut Env, script: &crate::ast::Script) -> Result<(String, i32), EvalError> {
    let mut transcript = String::new();
    let mut worst = Theorem1Outcome::AllHold;
    for statement in &script.statements {
        let output = execute(env, statement)?;
        if let Statement::Query(q) = statement {
            transcript.push_str(&format!("{q}\n"));
            transcript.push_str(&output.text);
            transcript.push('\n');
        }
        if let Some(o) = output.theorem1 {
            worst = match (worst, o) {
                (Theorem1Outcome::Failed, _) | (_, Theorem1Outcome::Failed) => {
                    Theorem1Outcome::Failed
                }
                (Theorem1Outcome::Inconclusive, _) | (_, Theorem1Outcome::Inconclusive) => {
                    Theorem1Outcome::Inconclusive
                }
                _ => Theorem1Outcome::AllHold,
            };
        }
    }
    Ok((transcript, worst.exit_code()))
}
