//! Abstract syntax of the query language, with a printer that round-trips
//! through the parser.

use std::fmt;
use topo_core::rational::fmt_rat;
use topo_core::topology::{TopologySpec, UnionMode};
use topo_core::{Interval, Point, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetAst {
    Empty,
    Full,
    Rationals,
    Irrationals,
    Ival(Interval),
    Single(Point),
    PaperU(Rat),
    Ident(String),
    Union(Box<SetAst>, Box<SetAst>),
    Intersect(Box<SetAst>, Box<SetAst>),
    Complement(Box<SetAst>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopoAst {
    Named(TopologySpec),
    Ident(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuncAst {
    Indicator(SetAst),
    Ident(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    Set(SetAst),
    Func(FuncAst),
    Topo(TopoAst),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Open {
        set: SetAst,
        topo: TopoAst,
        terms: Option<u32>,
    },
    Measure {
        set: SetAst,
        terms: Option<u32>,
    },
    Member {
        point: Point,
        set: SetAst,
        terms: Option<u32>,
    },
    Decompose {
        set: SetAst,
        terms: Option<u32>,
    },
    Continuous {
        func: FuncAst,
        topo: TopoAst,
        terms: Option<u32>,
    },
    Axioms {
        universe: Vec<u32>,
        collection: Vec<Vec<u32>>,
        mode: UnionMode,
    },
    Theorem1 {
        a: Option<Rat>,
        terms: Option<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Let { name: String, rhs: Rhs },
    Query(Query),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

impl fmt::Display for SetAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // precedence: '|' < '&' < '~'; parenthesize only when a looser
        // operator sits under a tighter one
        fn parens_in_intersect(s: &SetAst) -> bool {
            matches!(s, SetAst::Union(..))
        }
        fn parens_in_complement(s: &SetAst) -> bool {
            matches!(s, SetAst::Union(..) | SetAst::Intersect(..))
        }
        match self {
            SetAst::Empty => write!(f, "empty"),
            SetAst::Full => write!(f, "RR"),
            SetAst::Rationals => write!(f, "QQ"),
            SetAst::Irrationals => write!(f, "II"),
            SetAst::Ival(iv) => write!(f, "{iv}"),
            SetAst::Single(p) => write!(f, "{{{p}}}"),
            SetAst::PaperU(a) => write!(f, "paperU(a={})", fmt_rat(a)),
            SetAst::Ident(name) => write!(f, "{name}"),
            SetAst::Union(l, r) => {
                // '|' parses left-associatively, so a union in right
                // position needs grouping to round-trip structurally
                write!(f, "{l}|")?;
                if matches!(**r, SetAst::Union(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            SetAst::Intersect(l, r) => {
                if parens_in_intersect(l) {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, "&")?;
                if parens_in_intersect(r) || matches!(**r, SetAst::Intersect(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            SetAst::Complement(inner) => {
                if parens_in_complement(inner) {
                    write!(f, "~({inner})")
                } else {
                    write!(f, "~{inner}")
                }
            }
        }
    }
}

impl fmt::Display for TopoAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopoAst::Named(t) => write!(f, "{}", t.name()),
            TopoAst::Ident(name) => write!(f, "{name}"),
        }
    }
}

impl fmt::Display for FuncAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuncAst::Indicator(s) => write!(f, "indicator({s})"),
            FuncAst::Ident(name) => write!(f, "{name}"),
        }
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &Option<u32>) -> fmt::Result {
    match terms {
        Some(n) => write!(f, " terms {n}"),
        None => Ok(()),
    }
}

fn write_int_set(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Query::Open { set, topo, terms } => {
                write!(f, "open? {set} in {topo}")?;
                write_terms(f, terms)
            }
            Query::Measure { set, terms } => {
                write!(f, "measure {set}")?;
                write_terms(f, terms)
            }
            Query::Member { point, set, terms } => {
                write!(f, "member? {point} in {set}")?;
                write_terms(f, terms)
            }
            Query::Decompose { set, terms } => {
                write!(f, "decompose {set}")?;
                write_terms(f, terms)
            }
            Query::Continuous { func, topo, terms } => {
                write!(f, "continuous? {func} from {topo}")?;
                write_terms(f, terms)
            }
            Query::Axioms {
                universe,
                collection,
                mode,
            } => {
                write!(f, "axioms? ")?;
                write_int_set(f, universe)?;
                write!(f, " {{")?;
                for (i, s) in collection.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write_int_set(f, s)?;
                }
                write!(f, "}} mode ")?;
                match mode {
                    UnionMode::Arbitrary => write!(f, "arbitrary"),
                    UnionMode::Countable => write!(f, "countable"),
                }
            }
            Query::Theorem1 { a, terms } => {
                write!(f, "theorem1")?;
                if let Some(a) = a {
                    write!(f, " a={}", fmt_rat(a))?;
                }
                write_terms(f, terms)
            }
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Let { name, rhs } => match rhs {
                Rhs::Set(s) => write!(f, "let {name} = {s}"),
                Rhs::Func(func) => write!(f, "let {name} = {func}"),
                Rhs::Topo(t) => write!(f, "let {name} = {t}"),
            },
            Statement::Query(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.statements.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
