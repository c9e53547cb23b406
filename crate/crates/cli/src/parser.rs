//! Recursive-descent parser for the query language.
//!
//! Total on arbitrary input: every failure is a `ParseError` with line and
//! column, nesting depth is bounded, and no token sequence panics. Names must
//! be defined before use; the symbol table tracks which kind of value (set,
//! function, topology) each name holds so misuse is caught at parse time.

use crate::ast::{FuncAst, Query, Rhs, Script, SetAst, Statement, TopoAst};
use crate::lexer::{lex, ParseError, Tok, Token};
use num::bigint::BigInt;
use num::{BigRational, Zero};
use std::collections::BTreeMap;
use topo_core::rational::Rat;
use topo_core::topology::{TopologySpec, UnionMode};
use topo_core::{ExtRat, Interval, Point};

/// Maximum nesting depth of set expressions; keeps adversarial inputs from
/// exhausting the stack.
const MAX_DEPTH: u32 = 64;
/// Largest radicand accepted by sqrt(); square-free reduction is trial
/// division, so the argument must stay desk-scale.
const MAX_SQRT_ARG: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameKind {
    Set,
    Func,
    Topo,
}

pub type SymbolTable = BTreeMap<String, NameKind>;

const RESERVED: &[&str] = &[
    "let",
    "in",
    "from",
    "terms",
    "mode",
    "indicator",
    "sqrt",
    "paperU",
    "QQ",
    "II",
    "RR",
    "empty",
    "inf",
    "usual",
    "usualC",
    "michael",
    "michaelC",
    "arbitrary",
    "countable",
    "open?",
    "measure",
    "member?",
    "decompose",
    "continuous?",
    "axioms?",
    "theorem1",
    "a",
];

fn named_topology(name: &str) -> Option<TopologySpec> {
    match name {
        "usual" => Some(TopologySpec::USUAL),
        "usualC" => Some(TopologySpec::USUAL_C),
        "michael" => Some(TopologySpec::MICHAEL),
        "michaelC" => Some(TopologySpec::MICHAEL_C),
        _ => None,
    }
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    symbols: &'a mut SymbolTable,
}

/// Parses a complete script with a fresh symbol table.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let mut symbols = SymbolTable::new();
    parse_with_symbols(text, &mut symbols)
}

/// Parses a script against an existing symbol table (REPL sessions keep
/// their definitions across lines).
pub fn parse_with_symbols(text: &str, symbols: &mut SymbolTable) -> Result<Script, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        symbols,
    };
    p.script()
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = self.peek();
        ParseError::new(t.line, t.col, message)
    }

    fn expect(&mut self, kind: Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            Err(self.error_here(format!("expected {what}, found {}", self.peek().kind)))
        }
    }

    fn eat_newlines(&mut self) {
        while self.peek().kind == Tok::Newline {
            self.advance();
        }
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let mut statements = Vec::new();
        loop {
            self.eat_newlines();
            if self.peek().kind == Tok::Eof {
                break;
            }
            statements.push(self.statement()?);
            match &self.peek().kind {
                Tok::Newline => {
                    self.advance();
                }
                Tok::Eof => {}
                other => {
                    return Err(self.error_here(format!("expected end of statement, found {other}")))
                }
            }
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let tok = self.peek().clone();
        let word = match &tok.kind {
            Tok::Ident(w) => w.clone(),
            other => return Err(self.error_here(format!("expected a statement, found {other}"))),
        };
        match word.as_str() {
            "let" => self.let_statement(),
            "open?" => {
                self.advance();
                let set = self.set_expr(0)?;
                self.expect_keyword("in")?;
                let topo = self.topo()?;
                let terms = self.terms_opt()?;
                Ok(Statement::Query(Query::Open { set, topo, terms }))
            }
            "measure" => {
                self.advance();
                let set = self.set_expr(0)?;
                let terms = self.terms_opt()?;
                Ok(Statement::Query(Query::Measure { set, terms }))
            }
            "member?" => {
                self.advance();
                let point = self.point()?;
                self.expect_keyword("in")?;
                let set = self.set_expr(0)?;
                let terms = self.terms_opt()?;
                Ok(Statement::Query(Query::Member { point, set, terms }))
            }
            "decompose" => {
                self.advance();
                let set = self.set_expr(0)?;
                let terms = self.terms_opt()?;
                Ok(Statement::Query(Query::Decompose { set, terms }))
            }
            "continuous?" => {
                self.advance();
                let func = self.func()?;
                self.expect_keyword("from")?;
                let topo = self.topo()?;
                let terms = self.terms_opt()?;
                Ok(Statement::Query(Query::Continuous { func, topo, terms }))
            }
            "axioms?" => {
                self.advance();
                let universe = self.int_set()?;
                let collection = self.int_set_list()?;
                self.expect_keyword("mode")?;
                let mode = self.union_mode()?;
                Ok(Statement::Query(Query::Axioms {
                    universe,
                    collection,
                    mode,
                }))
            }
            "theorem1" => {
                self.advance();
                let mut a = None;
                if let Tok::Ident(w) = &self.peek().kind {
                    if w == "a" {
                        self.advance();
                        self.expect(Tok::Eq, "'='")?;
                        a = Some(self.signed_rational()?);
                    }
                }
                let terms = self.terms_opt()?;
                Ok(Statement::Query(Query::Theorem1 { a, terms }))
            }
            other => Err(ParseError::new(
                tok.line,
                tok.col,
                format!(
                    "unknown statement '{other}' (expected let, open?, measure, member?, \
                     decompose, continuous?, axioms?, or theorem1)"
                ),
            )),
        }
    }

    fn let_statement(&mut self) -> Result<Statement, ParseError> {
        self.advance(); // let
        let name_tok = self.advance();
        let name = match name_tok.kind {
            Tok::Ident(n) => n,
            other => {
                return Err(ParseError::new(
                    name_tok.line,
                    name_tok.col,
                    format!("expected a name after let, found {other}"),
                ))
            }
        };
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::new(
                name_tok.line,
                name_tok.col,
                format!("'{name}' is reserved and cannot be redefined"),
            ));
        }
        self.expect(Tok::Eq, "'='")?;
        let rhs = self.rhs()?;
        let kind = match &rhs {
            Rhs::Set(_) => NameKind::Set,
            Rhs::Func(_) => NameKind::Func,
            Rhs::Topo(_) => NameKind::Topo,
        };
        self.symbols.insert(name.clone(), kind);
        Ok(Statement::Let { name, rhs })
    }

    fn rhs(&mut self) -> Result<Rhs, ParseError> {
        if let Tok::Ident(w) = &self.peek().kind {
            if w == "indicator" {
                return Ok(Rhs::Func(self.func()?));
            }
            if named_topology(w).is_some() {
                return Ok(Rhs::Topo(self.topo()?));
            }
            match self.symbols.get(w.as_str()) {
                Some(NameKind::Func) => {
                    let name = w.clone();
                    self.advance();
                    return Ok(Rhs::Func(FuncAst::Ident(name)));
                }
                Some(NameKind::Topo) => {
                    let name = w.clone();
                    self.advance();
                    return Ok(Rhs::Topo(TopoAst::Ident(name)));
                }
                _ => {}
            }
        }
        Ok(Rhs::Set(self.set_expr(0)?))
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().kind {
            Tok::Ident(w) if w == kw => {
                self.advance();
                Ok(())
            }
            other => Err(self.error_here(format!("expected '{kw}', found {other}"))),
        }
    }

    fn terms_opt(&mut self) -> Result<Option<u32>, ParseError> {
        if let Tok::Ident(w) = &self.peek().kind {
            if w == "terms" {
                self.advance();
                let tok = self.advance();
                let n = match &tok.kind {
                    Tok::Int(n) => n,
                    other => {
                        return Err(ParseError::new(
                            tok.line,
                            tok.col,
                            format!("expected a truncation count, found {other}"),
                        ))
                    }
                };
                let val = u32::try_from(n).map_err(|_| {
                    ParseError::new(tok.line, tok.col, "truncation count too large")
                })?;
                if val == 0 {
                    return Err(ParseError::new(
                        tok.line,
                        tok.col,
                        "truncation count must be at least 1",
                    ));
                }
                return Ok(Some(val));
            }
        }
        Ok(None)
    }

    fn union_mode(&mut self) -> Result<UnionMode, ParseError> {
        let tok = self.advance();
        match &tok.kind {
            Tok::Ident(w) if w == "arbitrary" => Ok(UnionMode::Arbitrary),
            Tok::Ident(w) if w == "countable" => Ok(UnionMode::Countable),
            other => Err(ParseError::new(
                tok.line,
                tok.col,
                format!("expected 'arbitrary' or 'countable', found {other}"),
            )),
        }
    }

    fn topo(&mut self) -> Result<TopoAst, ParseError> {
        let tok = self.advance();
        match &tok.kind {
            Tok::Ident(w) => {
                if let Some(t) = named_topology(w) {
                    Ok(TopoAst::Named(t))
                } else {
                    match self.symbols.get(w.as_str()) {
                        Some(NameKind::Topo) => Ok(TopoAst::Ident(w.clone())),
                        Some(_) => Err(ParseError::new(
                            tok.line,
                            tok.col,
                            format!("type mismatch: '{w}' does not name a topology"),
                        )),
                        None => Err(ParseError::new(
                            tok.line,
                            tok.col,
                            format!("unknown topology '{w}'"),
                        )),
                    }
                }
            }
            other => Err(ParseError::new(
                tok.line,
                tok.col,
                format!("expected a topology, found {other}"),
            )),
        }
    }

    fn func(&mut self) -> Result<FuncAst, ParseError> {
        let tok = self.advance();
        match &tok.kind {
            Tok::Ident(w) if w == "indicator" => {
                self.expect(Tok::LParen, "'('")?;
                let set = self.set_expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(FuncAst::Indicator(set))
            }
            Tok::Ident(w) => match self.symbols.get(w.as_str()) {
                Some(NameKind::Func) => Ok(FuncAst::Ident(w.clone())),
                Some(_) => Err(ParseError::new(
                    tok.line,
                    tok.col,
                    format!("type mismatch: '{w}' does not name a function"),
                )),
                None => Err(ParseError::new(
                    tok.line,
                    tok.col,
                    format!("unknown function '{w}'"),
                )),
            },
            other => Err(ParseError::new(
                tok.line,
                tok.col,
                format!("expected a function, found {other}"),
            )),
        }
    }

    fn set_expr(&mut self, depth: u32) -> Result<SetAst, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error_here("expression nesting too deep"));
        }
        let mut left = self.set_intersect(depth)?;
        while self.peek().kind == Tok::Pipe {
            self.advance();
            let right = self.set_intersect(depth)?;
            left = SetAst::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn set_intersect(&mut self, depth: u32) -> Result<SetAst, ParseError> {
        let mut left = self.set_atom(depth)?;
        while self.peek().kind == Tok::Amp {
            self.advance();
            let right = self.set_atom(depth)?;
            left = SetAst::Intersect(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn set_atom(&mut self, depth: u32) -> Result<SetAst, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.error_here("expression nesting too deep"));
        }
        let tok = self.peek().clone();
        match &tok.kind {
            Tok::Tilde => {
                self.advance();
                let inner = self.set_atom(depth + 1)?;
                Ok(SetAst::Complement(Box::new(inner)))
            }
            Tok::LParen => {
                // an interval starts with a number or 'inf'; anything else
                // is a parenthesized expression
                let next = self.peek2().kind.clone();
                let is_interval = matches!(next, Tok::Int(_) | Tok::Minus)
                    || matches!(&next, Tok::Ident(w) if w == "inf");
                self.advance();
                if is_interval {
                    let lo = self.ext_endpoint()?;
                    self.expect(Tok::Comma, "','")?;
                    let hi = self.ext_endpoint()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(SetAst::Ival(Interval::new(lo, hi)))
                } else {
                    let inner = self.set_expr(depth + 1)?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(inner)
                }
            }
            Tok::LBrace => {
                self.advance();
                let p = self.point()?;
                self.expect(Tok::RBrace, "'}'")?;
                Ok(SetAst::Single(p))
            }
            Tok::Ident(w) => match w.as_str() {
                "QQ" => {
                    self.advance();
                    Ok(SetAst::Rationals)
                }
                "II" => {
                    self.advance();
                    Ok(SetAst::Irrationals)
                }
                "RR" => {
                    self.advance();
                    Ok(SetAst::Full)
                }
                "empty" => {
                    self.advance();
                    Ok(SetAst::Empty)
                }
                "paperU" => {
                    self.advance();
                    self.expect(Tok::LParen, "'('")?;
                    self.expect_keyword("a")?;
                    self.expect(Tok::Eq, "'='")?;
                    let a = self.signed_rational()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(SetAst::PaperU(a))
                }
                name => match self.symbols.get(name) {
                    Some(NameKind::Set) => {
                        let n = name.to_string();
                        self.advance();
                        Ok(SetAst::Ident(n))
                    }
                    Some(_) => Err(ParseError::new(
                        tok.line,
                        tok.col,
                        format!("type mismatch: '{name}' does not name a set"),
                    )),
                    None => Err(ParseError::new(
                        tok.line,
                        tok.col,
                        format!("unknown identifier '{name}'"),
                    )),
                },
            },
            other => Err(self.error_here(format!("expected a set expression, found {other}"))),
        }
    }

    fn ext_endpoint(&mut self) -> Result<ExtRat, ParseError> {
        let negative = if self.peek().kind == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        if let Tok::Ident(w) = &self.peek().kind {
            if w == "inf" {
                self.advance();
                return Ok(if negative {
                    ExtRat::NegInf
                } else {
                    ExtRat::PosInf
                });
            }
        }
        let r = self.unsigned_rational()?;
        Ok(ExtRat::Finite(if negative { -r } else { r }))
    }

    fn unsigned_rational(&mut self) -> Result<Rat, ParseError> {
        let tok = self.advance();
        let num = match &tok.kind {
            Tok::Int(n) => n.clone(),
            other => {
                return Err(ParseError::new(
                    tok.line,
                    tok.col,
                    format!("expected a number, found {other}"),
                ))
            }
        };
        if self.peek().kind == Tok::Slash {
            self.advance();
            let den_tok = self.advance();
            let den = match &den_tok.kind {
                Tok::Int(d) => d.clone(),
                other => {
                    return Err(ParseError::new(
                        den_tok.line,
                        den_tok.col,
                        format!("expected a denominator, found {other}"),
                    ))
                }
            };
            if den.is_zero() {
                return Err(ParseError::new(
                    den_tok.line,
                    den_tok.col,
                    "zero denominator",
                ));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn signed_rational(&mut self) -> Result<Rat, ParseError> {
        let negative = if self.peek().kind == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let r = self.unsigned_rational()?;
        Ok(if negative { -r } else { r })
    }

    fn sqrt_term(&mut self) -> Result<u64, ParseError> {
        // caller has seen 'sqrt'
        self.advance();
        self.expect(Tok::LParen, "'('")?;
        let tok = self.advance();
        let d = match &tok.kind {
            Tok::Int(n) => n,
            other => {
                return Err(ParseError::new(
                    tok.line,
                    tok.col,
                    format!("expected a radicand, found {other}"),
                ))
            }
        };
        let d = u64::try_from(d)
            .ok()
            .filter(|d| *d <= MAX_SQRT_ARG)
            .ok_or(ParseError::new(
                tok.line,
                tok.col,
                "sqrt argument too large",
            ))?;
        self.expect(Tok::RParen, "')'")?;
        Ok(d)
    }

    fn is_sqrt(&self) -> bool {
        matches!(&self.peek().kind, Tok::Ident(w) if w == "sqrt")
    }

    /// Points: `p`, `sqrt(d)`, `c*sqrt(d)`, `p + c*sqrt(d)`, `p - sqrt(d)`,
    /// with optional leading minus on the first term.
    fn point(&mut self) -> Result<Point, ParseError> {
        let negative = if self.peek().kind == Tok::Minus {
            self.advance();
            true
        } else {
            false
        };
        let sign = |r: Rat| if negative { -r } else { r };
        if self.is_sqrt() {
            let d = self.sqrt_term()?;
            return Ok(Point::surd(
                Rat::zero(),
                sign(Rat::from_integer(1.into())),
                d,
            ));
        }
        let first = self.unsigned_rational()?;
        // coefficient form: c * sqrt(d)
        if self.peek().kind == Tok::Star {
            self.advance();
            if !self.is_sqrt() {
                return Err(self.error_here("expected sqrt after '*'"));
            }
            let d = self.sqrt_term()?;
            return Ok(Point::surd(Rat::zero(), sign(first), d));
        }
        let p = sign(first);
        // optional surd tail: ± [c*] sqrt(d)
        let tail_sign = match self.peek().kind {
            Tok::Plus => 1,
            Tok::Minus => -1,
            _ => return Ok(Point::Rational(p)),
        };
        self.advance();
        let coeff = if self.is_sqrt() {
            Rat::from_integer(1.into())
        } else {
            let c = self.unsigned_rational()?;
            self.expect(Tok::Star, "'*'")?;
            if !self.is_sqrt() {
                return Err(self.error_here("expected sqrt after '*'"));
            }
            c
        };
        let d = self.sqrt_term()?;
        let c = coeff * BigRational::from_integer(BigInt::from(tail_sign));
        Ok(Point::surd(p, c, d))
    }

    fn int_set(&mut self) -> Result<Vec<u32>, ParseError> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut out = Vec::new();
        if self.peek().kind == Tok::RBrace {
            self.advance();
            return Ok(out);
        }
        loop {
            let tok = self.advance();
            match &tok.kind {
                Tok::Int(n) => {
                    let v = u32::try_from(n)
                        .map_err(|_| ParseError::new(tok.line, tok.col, "element too large"))?;
                    out.push(v);
                }
                other => {
                    return Err(ParseError::new(
                        tok.line,
                        tok.col,
                        format!("expected an element, found {other}"),
                    ))
                }
            }
            match self.peek().kind {
                Tok::Comma => {
                    self.advance();
                }
                Tok::RBrace => {
                    self.advance();
                    return Ok(out);
                }
                _ => return Err(self.error_here("expected ',' or '}'")),
            }
        }
    }

    fn int_set_list(&mut self) -> Result<Vec<Vec<u32>>, ParseError> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut out = Vec::new();
        if self.peek().kind == Tok::RBrace {
            self.advance();
            return Ok(out);
        }
        loop {
            out.push(self.int_set()?);
            match self.peek().kind {
                Tok::Comma => {
                    self.advance();
                }
                Tok::RBrace => {
                    self.advance();
                    return Ok(out);
                }
                _ => return Err(self.error_here("expected ',' or '}'")),
            }
        }
    }
}
