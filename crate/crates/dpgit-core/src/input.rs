//! The `.dp` text format.
//!
//! ```text
//! # a cubic surface
//! ring P^3 vars x0 x1 x2 x3
//! poly x1*x2*x3 - x0^3
//! ```
//!
//! Statements are separated by newlines or `;`, and `#` starts a comment.
//! Multiplication needs an explicit `*`, exponents are nonnegative integers
//! and division is only allowed by nonzero constants.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::polyalg::{FieldElement, MultiPoly, Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    /// `P^n`, `n + 1` variables.
    Projective(usize),
    /// `P(w0,...,wn)`.
    Weighted(Vec<i64>),
    /// `A^n`.
    Affine(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub kind: RingKind,
    pub gaussian: bool,
    pub vars: Vec<String>,
}

impl RingDecl {
    pub fn ring(&self) -> Arc<Ring> {
        let w = match &self.kind {
            RingKind::Weighted(w) => Some(w.clone()),
            RingKind::Projective(_) => Some(vec![1; self.vars.len()]),
            RingKind::Affine(_) => None,
        };
        Ring::from_names(self.vars.clone(), w)
    }

    pub fn weights(&self) -> Option<Vec<i64>> {
        match &self.kind {
            RingKind::Weighted(w) => Some(w.clone()),
            RingKind::Projective(n) => Some(vec![1; n + 1]),
            RingKind::Affine(_) => None,
        }
    }
}

impl fmt::Display for RingDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Projective(n) => write!(f, "P^{n}")?,
            RingKind::Affine(n) => write!(f, "A^{n}")?,
            RingKind::Weighted(w) => {
                let s: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "P({})", s.join(","))?
            }
        }
        if self.gaussian {
            f.write_str(" over Q(i)")?;
        }
        write!(f, " vars {}", self.vars.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefKind {
    X1T,
    X1e,
    E,
}

impl DefKind {
    pub fn name(&self) -> &'static str {
        match self {
            DefKind::X1T => "X1T",
            DefKind::X1e => "X1e",
            DefKind::E => "E",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Poly(MultiPoly),
    Branch(MultiPoly),
    Germ(MultiPoly),
    Weights(Vec<Vec<i64>>),
    Point(Vec<FieldElement>),
    Def(DefKind),
    Invariants(Vec<FieldElement>),
    Name(String),
    Matrix(Vec<Vec<FieldElement>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub ring: Option<RingDecl>,
    pub statements: Vec<Statement>,
}

fn consts(v: &[FieldElement]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_text()).collect();
    format!("[{}]", s.join(", "))
}

impl fmt::Display for Document {
    /// Canonical text; parsing it gives back an equal document.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.ring {
            writeln!(f, "ring {r}")?;
        }
        for s in &self.statements {
            match s {
                Statement::Poly(p) => writeln!(f, "poly {p}")?,
                Statement::Branch(p) => writeln!(f, "branch {p}")?,
                Statement::Germ(p) => writeln!(f, "germ {p}")?,
                Statement::Weights(w) => {
                    let rows: Vec<String> = w
                        .iter()
                        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                        .collect();
                    writeln!(f, "weights [{}]", rows.join(", "))?
                }
                Statement::Point(p) => writeln!(f, "point {}", consts(p))?,
                Statement::Def(d) => writeln!(f, "def {}", d.name())?,
                Statement::Invariants(v) => writeln!(f, "invariants {}", consts(v))?,
                Statement::Name(n) => writeln!(f, "name {n}")?,
                Statement::Matrix(m) => {
                    let rows: Vec<String> = m.iter().map(|r| consts(r)).collect();
                    writeln!(f, "matrix [{}]", rows.join(", "))?
                }
            }
        }
        Ok(())
    }
}

impl Document {
    pub fn polys(&self) -> Vec<&MultiPoly> {
        self.statements
            .iter()
            .filter_map(|s| match s {
                Statement::Poly(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    pub fn branch(&self) -> Option<&MultiPoly> {
        self.statements.iter().find_map(|s| match s {
            Statement::Branch(p) => Some(p),
            _ => None,
        })
    }

    pub fn germ(&self) -> Option<&MultiPoly> {
        self.statements.iter().find_map(|s| match s {
            Statement::Germ(p) => Some(p),
            _ => None,
        })
    }

    pub fn weights(&self) -> Option<&Vec<Vec<i64>>> {
        self.statements.iter().find_map(|s| match s {
            Statement::Weights(w) => Some(w),
            _ => None,
        })
    }

    pub fn point(&self) -> Option<&Vec<FieldElement>> {
        self.statements.iter().find_map(|s| match s {
            Statement::Point(p) => Some(p),
            _ => None,
        })
    }

    pub fn def(&self) -> Option<DefKind> {
        self.statements.iter().find_map(|s| match s {
            Statement::Def(d) => Some(*d),
            _ => None,
        })
    }

    pub fn invariants(&self) -> Option<&Vec<FieldElement>> {
        self.statements.iter().find_map(|s| match s {
            Statement::Invariants(v) => Some(v),
            _ => None,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.statements.iter().find_map(|s| match s {
            Statement::Name(n) => Some(n.as_str()),
            _ => None,
        })
    }

    pub fn matrices(&self) -> Vec<&Vec<Vec<FieldElement>>> {
        self.statements
            .iter()
            .filter_map(|s| match s {
                Statement::Matrix(m) => Some(m),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Sep,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::Sep => "end of statement".into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            let err = |m: String| ParseError {
                line: li + 1,
                column: col,
                message: m,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                    if chars[i] == '.' || chars.get(i + 1).is_some_and(|d| d.is_ascii_digit() || *d == '-' || *d == '+') {
                        return Err(err("non-rational literal: write exact fractions such as 3/2".into()));
                    }
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token {
                    tok: Tok::Int(s.parse().unwrap()),
                    line: li + 1,
                    col,
                });
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: li + 1,
                    col,
                });
                continue;
            }
            if c == '.' {
                return Err(err("non-rational literal: write exact fractions such as 3/2".into()));
            }
            if "+-*/^()[],".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line: li + 1,
                    col,
                });
            } else if c == ';' {
                out.push(Token {
                    tok: Tok::Sep,
                    line: li + 1,
                    col,
                });
            } else {
                return Err(err(format!("unexpected character '{c}'")));
            }
            i += 1;
        }
        out.push(Token {
            tok: Tok::Sep,
            line: li + 1,
            col: chars.len() + 1,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Var(String, usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    gaussian: bool,
    ring: Option<Arc<Ring>>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        self.toks.get(self.pos).map(|t| &t.tok).unwrap_or(&Tok::Sep)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) if t.tok != Tok::Sep => (t.line, t.col),
            _ => self.last_pos(),
        }
    }

    /// Position of the previous real token, used for errors at the end of a statement.
    fn last_pos(&self) -> (usize, usize) {
        let mut i = self.pos.min(self.toks.len());
        while i > 0 {
            i -= 1;
            if self.toks[i].tok != Tok::Sep {
                return (self.toks[i].line, self.toks[i].col);
            }
        }
        (1, 1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError {
            line,
            column,
            message: msg.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        match self.peek() {
            Tok::Sep => {
                let prev = self.pos.checked_sub(1).and_then(|i| self.toks.get(i)).map(|t| describe(&t.tok));
                match prev {
                    Some(p) => self.err(format!("expected {wanted}, found end of statement after {p}")),
                    None => self.err(format!("expected {wanted}, found end of input")),
                }
            }
            t => self.err(format!("expected {wanted}, found {}", describe(t))),
        }
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek().clone();
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(&format!("'{c}'"))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.unexpected(wanted),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.unexpected(&format!("'{kw}'")),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Sym('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.int()?;
        let v: i64 = match i64::try_from(&n) {
            Ok(v) => v,
            Err(_) => {
                self.pos -= 1;
                return self.err("integer out of range");
            }
        };
        Ok(if neg { -v } else { v })
    }

    fn end_statement(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Sep => {
                self.pos += 1;
                Ok(())
            }
            t => {
                let t = describe(t);
                self.err(format!("unexpected {t}; use '*' for multiplication and ';' or a newline between statements"))
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = match self.peek() {
            Tok::Sym('-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Sym('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.pos += 1;
                    let (l, c) = self.here();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?), l, c);
                }
                Tok::Ident(_) | Tok::Int(_) | Tok::Sym('(') => {
                    return self.err(format!("expected an operator, found {}; use '*' for multiplication", describe(self.peek())));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.pos += 1;
            if *self.peek() == Tok::Sym('-') {
                return self.err("exponents must be nonnegative integers");
            }
            let n = self.int()?;
            let e = match u32::try_from(&n) {
                Ok(e) if e <= 10_000 => e,
                _ => {
                    self.pos -= 1;
                    return self.err("exponent too large");
                }
            };
            if *self.peek() == Tok::Sym('^') {
                return self.err("write nested powers with parentheses");
            }
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (line, col) = self.here();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(Expr::Var(s, line, col))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Sym('-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => self.unexpected("a number, a variable or '('"),
        }
    }

    fn eval(&self, e: &Expr, ring: &Arc<Ring>) -> Result<MultiPoly, ParseError> {
        Ok(match e {
            Expr::Num(n) => MultiPoly::constant(ring, FieldElement::Rat(Rational::from_integer(n.clone()))),
            Expr::Var(s, line, col) => {
                if let Some(i) = ring.index_of(s) {
                    MultiPoly::var(ring, i)
                } else if self.gaussian && s == "i" {
                    MultiPoly::constant(ring, FieldElement::i())
                } else {
                    return Err(ParseError {
                        line: *line,
                        column: *col,
                        message: format!("undeclared variable '{s}'"),
                    });
                }
            }
            Expr::Add(a, b) => &self.eval(a, ring)? + &self.eval(b, ring)?,
            Expr::Sub(a, b) => &self.eval(a, ring)? - &self.eval(b, ring)?,
            Expr::Mul(a, b) => &self.eval(a, ring)? * &self.eval(b, ring)?,
            Expr::Neg(a) => -&self.eval(a, ring)?,
            Expr::Pow(a, k) => self.eval(a, ring)?.pow(*k),
            Expr::Div(a, b, line, col) => {
                let d = self.eval(b, ring)?;
                let err = |m: &str| ParseError {
                    line: *line,
                    column: *col,
                    message: m.into(),
                };
                if !d.is_constant() {
                    return Err(err("division is only allowed by constants"));
                }
                let c = d.constant_term();
                if c.is_zero() {
                    return Err(err("division by zero"));
                }
                self.eval(a, ring)?.scale(&c.inv())
            }
        })
    }

    fn poly(&mut self) -> Result<MultiPoly, ParseError> {
        let start = self.pos;
        let e = self.expr()?;
        self.end_statement()?;
        let Some(ring) = self.ring.clone() else {
            self.pos = start;
            return self.err("declare a ring before polynomials");
        };
        self.eval(&e, &ring)
    }

    fn constant(&mut self) -> Result<FieldElement, ParseError> {
        let e = self.expr()?;
        let ring = Ring::new(&[]);
        Ok(self.eval(&e, &ring)?.constant_term())
    }

    fn const_list(&mut self) -> Result<Vec<FieldElement>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if *self.peek() == Tok::Sym(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.constant()?);
            match self.peek() {
                Tok::Sym(',') => self.pos += 1,
                Tok::Sym(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.unexpected("',' or ']'"),
            }
        }
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        if *self.peek() == Tok::Sym(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.small_int()?);
            match self.peek() {
                Tok::Sym(',') => self.pos += 1,
                Tok::Sym(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.unexpected("',' or ']'"),
            }
        }
    }

    fn nested<T>(&mut self, row: impl Fn(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect_sym('[')?;
        let mut out = Vec::new();
        loop {
            out.push(row(self)?);
            match self.peek() {
                Tok::Sym(',') => self.pos += 1,
                Tok::Sym(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.unexpected("',' or ']'"),
            }
        }
    }

    fn ring_decl(&mut self) -> Result<RingDecl, ParseError> {
        let head = self.ident("'P' or 'A'")?;
        let kind = match head.as_str() {
            "P" if *self.peek() == Tok::Sym('(') => {
                self.pos += 1;
                let mut w = Vec::new();
                loop {
                    let x = self.small_int()?;
                    if x <= 0 {
                        self.pos -= 1;
                        return self.err("weights must be positive");
                    }
                    w.push(x);
                    match self.bump() {
                        Tok::Sym(',') => {}
                        Tok::Sym(')') => break,
                        _ => {
                            self.pos -= 1;
                            return self.unexpected("',' or ')'");
                        }
                    }
                }
                RingKind::Weighted(w)
            }
            "P" | "A" => {
                self.expect_sym('^')?;
                let n = self.small_int()?;
                if !(1..=32).contains(&n) {
                    self.pos -= 1;
                    return self.err("dimension must be between 1 and 32");
                }
                if head == "P" {
                    RingKind::Projective(n as usize)
                } else {
                    RingKind::Affine(n as usize)
                }
            }
            _ => {
                self.pos -= 1;
                return self.err(format!("unknown ambient '{head}'; expected P^n, P(w0,...,wn) or A^n"));
            }
        };
        let mut gaussian = false;
        if matches!(self.peek(), Tok::Ident(s) if s == "over") {
            self.pos += 1;
            self.keyword("Q")?;
            self.expect_sym('(')?;
            self.keyword("i")?;
            self.expect_sym(')')?;
            gaussian = true;
        }
        self.keyword("vars")?;
        let mut vars = Vec::new();
        while let Tok::Ident(s) = self.peek().clone() {
            if vars.contains(&s) {
                return self.err(format!("variable '{s}' declared twice"));
            }
            if gaussian && s == "i" {
                return self.err("'i' is the imaginary unit over Q(i)");
            }
            vars.push(s);
            self.pos += 1;
            if matches!(self.peek(), Tok::Sym(',')) {
                self.pos += 1;
            }
        }
        let expected = match &kind {
            RingKind::Projective(n) => n + 1,
            RingKind::Weighted(w) => w.len(),
            RingKind::Affine(n) => *n,
        };
        if vars.len() != expected {
            return self.err(format!("expected {expected} variable names, found {}", vars.len()));
        }
        self.end_statement()?;
        Ok(RingDecl { kind, gaussian, vars })
    }

    fn statement(&mut self, doc: &mut Document) -> Result<(), ParseError> {
        let kw = self.ident("a statement keyword")?;
        let st = match kw.as_str() {
            "ring" => {
                if doc.ring.is_some() {
                    self.pos -= 1;
                    return self.err("ring declared twice");
                }
                let r = self.ring_decl()?;
                self.gaussian = r.gaussian;
                self.ring = Some(r.ring());
                doc.ring = Some(r);
                return Ok(());
            }
            "poly" => Statement::Poly(self.poly()?),
            "branch" => Statement::Branch(self.poly()?),
            "germ" => Statement::Germ(self.poly()?),
            "weights" => {
                self.expect_sym('[')?;
                let w = if *self.peek() == Tok::Sym('[') {
                    self.pos -= 1;
                    self.nested(|p| p.int_list())?
                } else {
                    self.pos -= 1;
                    self.int_list()?.into_iter().map(|x| vec![x]).collect()
                };
                self.end_statement()?;
                Statement::Weights(w)
            }
            "point" => {
                let v = self.const_list()?;
                self.end_statement()?;
                Statement::Point(v)
            }
            "invariants" => {
                let v = self.const_list()?;
                self.end_statement()?;
                Statement::Invariants(v)
            }
            "matrix" => {
                let m = self.nested(|p| p.const_list())?;
                self.end_statement()?;
                Statement::Matrix(m)
            }
            "def" => {
                let d = match self.ident("X1T, X1e or E")?.as_str() {
                    "X1T" => DefKind::X1T,
                    "X1e" => DefKind::X1e,
                    "E" => DefKind::E,
                    other => {
                        self.pos -= 1;
                        return self.err(format!("unknown deformation space '{other}'; expected X1T, X1e or E"));
                    }
                };
                self.end_statement()?;
                Statement::Def(d)
            }
            "name" => {
                let n = self.ident("a name")?;
                self.end_statement()?;
                Statement::Name(n)
            }
            other => {
                self.pos -= 1;
                return self.err(format!("unknown statement '{other}'"));
            }
        };
        doc.statements.push(st);
        Ok(())
    }
}

/// Weights are written either flat (`[1, -1, 2]`, one rank-1 weight per
/// coordinate) or nested (`[[1, 0], [-1, 2]]`).
pub fn parse(src: &str) -> Result<Document, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        gaussian: false,
        ring: None,
    };
    let mut doc = Document::default();
    while !p.at_end() {
        if *p.peek() == Tok::Sep {
            p.pos += 1;
            continue;
        }
        p.statement(&mut doc)?;
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_weighted_branch() {
        let d = parse("ring P(1,1,2) vars x y z\nbranch z^3 + x^2*y^2*z + x^3*y^3 # dp1\n").unwrap();
        assert_eq!(d.ring.as_ref().unwrap().kind, RingKind::Weighted(vec![1, 1, 2]));
        assert_eq!(d.branch().unwrap().num_terms(), 3);
    }

    #[test]
    fn error_positions() {
        assert!(parse("ring P(1,2,9,9) vars x1,x2,x3,x4; poly x3*x4 - x2^9").is_ok());
        assert_eq!(parse("poly x +").unwrap_err().column, 8);
        let e = parse("ring P^2 vars x y z\npoly x +").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        let e = parse("ring P^2 vars x y z\npoly 2x").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        let e = parse("ring P^2 vars x y z\npoly 1.5*x").unwrap_err();
        assert!(e.message.contains("non-rational literal"));
        let e = parse("ring P^2 vars x y z\npoly x + w").unwrap_err();
        assert!(e.message.contains("undeclared variable 'w'"));
        assert_eq!(e.column, 10);
        let e = parse("ring P^2 vars x y z\npoly x/y").unwrap_err();
        assert!(e.message.contains("only allowed by constants"));
    }

    #[test]
    fn round_trip() {
        let src = "ring P^2 over Q(i) vars x y z; poly (1 + i)*x^2 - 3/2*y*z; point [1, 2*i + 1, -1/3]; weights [[1, -1], [-3, 6]]; def X1T; name X3T\n";
        let d = parse(src).unwrap();
        let printed = d.to_string();
        assert_eq!(parse(&printed).unwrap(), d);
    }
}
