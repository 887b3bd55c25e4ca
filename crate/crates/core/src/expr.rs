//! Multivector expressions: parsing, evaluation and canonical printing.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '^' | 'x') unary)*        left-associative
//! unary   := '-' unary | primary
//! primary := number | blade | '(' expr ')'
//!          | inv(expr) | gi(expr) | grade(expr, k) | cmt(expr, expr)
//! ```
//!
//! The three products share one precedence tier, so `a*b^c` means
//! `(a*b)^c`. Use parentheses when mixing them.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::clifford::{format_terms, Algebra, Blade, Multivector};
use crate::error::GaError;
use crate::scalar::Scalar;
use crate::structure::{commutator, inverse};
use crate::MAX_DIM;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: expected {} but found {found}", .expected.join(" or "))]
    Syntax { offset: usize, expected: Vec<&'static str>, found: String },
    #[error("unknown blade `{name}` at byte {offset}: {reason}")]
    UnknownBlade { offset: usize, name: String, reason: String },
    #[error("invalid scalar literal `{text}` at byte {offset}")]
    BadLiteral { offset: usize, text: String },
    #[error(transparent)]
    Eval(#[from] GaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Wedge,
    Cmt,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Wedge => "^",
            BinOp::Cmt => "x",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Literal text, checked against the scalar type at evaluation.
    Scalar {
        text: String,
        offset: usize,
    },
    Blade {
        indices: Vec<usize>,
        offset: usize,
    },
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Inv(Box<Expr>),
    GradeInvolution(Box<Expr>),
    Grade(Box<Expr>, usize),
}

/// Fully parenthesised, so `parse(e.to_string())` rebuilds the same tree
/// up to offsets.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar { text, .. } => f.write_str(text),
            Expr::Blade { indices, .. } => f.write_str(&Blade::from_indices(indices).name()),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            Expr::Inv(e) => write!(f, "inv({e})"),
            Expr::GradeInvolution(e) => write!(f, "gi({e})"),
            Expr::Grade(e, k) => write!(f, "grade({e}, {k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Blade(String),
    Word(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(s) | Tok::Blade(s) | Tok::Word(s) => format!("`{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let take = |mut j: usize, pred: &dyn Fn(u8) -> bool| {
        while j < bytes.len() && pred(bytes[j]) {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = take(i, &|b| b.is_ascii_digit() || b == b'.');
            if bytes.get(j) == Some(&b'/') && bytes.get(j + 1).is_some_and(u8::is_ascii_digit) {
                j = take(j + 1, &|b| b.is_ascii_digit());
            }
            out.push((Tok::Num(src[i..j].into()), i));
            i = j;
        } else if c == b'e' && bytes.get(i + 1).is_some_and(|b| b.is_ascii_digit() || *b == b'_') {
            let j = take(i + 1, &|b| b.is_ascii_digit() || b == b'_');
            out.push((Tok::Blade(src[i..j].into()), i));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let j = take(i, &|b| b.is_ascii_alphanumeric() || b == b'_');
            out.push((Tok::Word(src[i..j].into()), i));
            i = j;
        } else if "+-*^(),".contains(c as char) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().expect("in bounds");
            return Err(ExprError::Syntax {
                offset: i,
                expected: vec!["number", "blade", "operator", "`(`"],
                found: format!("`{ch}`"),
            });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// Indices of a blade literal: `e013` digit by digit, or `e1_11` split on
/// underscores (`e_11` for a lone index). Indices must be strictly ascending.
fn blade_indices(name: &str, offset: usize) -> Result<Vec<usize>, ExprError> {
    let body = &name[1..];
    let (body, split) = match body.strip_prefix('_') {
        Some(rest) => (rest, true),
        None => (body, body.contains('_')),
    };
    let unknown = |reason: String| ExprError::UnknownBlade { offset, name: name.into(), reason };
    let parts: Vec<&str> =
        if split { body.split('_').collect() } else { body.split("").filter(|s| !s.is_empty()).collect() };
    let mut indices = Vec::with_capacity(parts.len());
    for p in parts {
        let i: usize = p.parse().map_err(|_| unknown("malformed index list".into()))?;
        if i >= MAX_DIM {
            return Err(unknown(format!("index {i} exceeds the maximum dimension {MAX_DIM}")));
        }
        if indices.last().is_some_and(|&last| last >= i) {
            return Err(unknown("indices must be strictly ascending".into()));
        }
        indices.push(i);
    }
    Ok(indices)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error(&self, expected: Vec<&'static str>) -> ExprError {
        ExprError::Syntax { offset: self.offset(), expected, found: self.peek().describe() }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(vec![name]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('+') => BinOp::Add,
                Tok::Sym('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Sym('*') => BinOp::Mul,
                Tok::Sym('^') => BinOp::Wedge,
                Tok::Word(w) if w == "x" => BinOp::Cmt,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        let offset = self.offset();
        let tok = self.peek().clone();
        match tok {
            Tok::Num(text) => {
                self.pos += 1;
                Ok(Expr::Scalar { text, offset })
            }
            Tok::Blade(name) => {
                self.pos += 1;
                Ok(Expr::Blade { indices: blade_indices(&name, offset)?, offset })
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')', "`)`")?;
                Ok(e)
            }
            Tok::Word(w) if matches!(w.as_str(), "inv" | "gi" | "grade" | "cmt") => {
                self.pos += 1;
                self.expect('(', "`(`")?;
                let arg = self.expr()?;
                let e = match w.as_str() {
                    "inv" => Expr::Inv(Box::new(arg)),
                    "gi" => Expr::GradeInvolution(Box::new(arg)),
                    "grade" => {
                        self.expect(',', "`,`")?;
                        let k = match self.peek() {
                            Tok::Num(t) => t.parse::<usize>().ok(),
                            _ => None,
                        }
                        .ok_or_else(|| self.error(vec!["grade index"]))?;
                        self.pos += 1;
                        Expr::Grade(Box::new(arg), k)
                    }
                    _ => {
                        self.expect(',', "`,`")?;
                        Expr::Binary(BinOp::Cmt, Box::new(arg), Box::new(self.expr()?))
                    }
                };
                self.expect(')', "`)`")?;
                Ok(e)
            }
            _ => Err(self.error(vec!["number", "blade", "`(`", "`-`", "inv", "gi", "grade", "cmt"])),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(vec!["operator", "end of input"]));
    }
    Ok(e)
}

/// Evaluates in `alg`. Blade literals name the algebra's input basis.
pub fn eval<S: Scalar>(e: &Expr, alg: &Arc<Algebra<S>>) -> Result<Multivector<S>, ExprError> {
    Ok(match e {
        Expr::Scalar { text, offset } => {
            let s =
                S::parse_literal(text).ok_or_else(|| ExprError::BadLiteral { offset: *offset, text: text.clone() })?;
            Multivector::scalar(alg, s)
        }
        Expr::Blade { indices, offset } => {
            if let Some(&i) = indices.iter().find(|&&i| i >= alg.dim()) {
                return Err(ExprError::UnknownBlade {
                    offset: *offset,
                    name: Blade::from_indices(indices).name(),
                    reason: format!("index {i} out of range for dimension {}", alg.dim()),
                });
            }
            alg.input_blade(Blade::from_indices(indices))
        }
        Expr::Neg(a) => -eval(a, alg)?,
        Expr::Binary(op, a, b) => {
            let (a, b) = (eval(a, alg)?, eval(b, alg)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                // The outer product does not depend on the basis it is computed in.
                BinOp::Wedge => a.wedge(&b),
                BinOp::Cmt => commutator(&a, &b)?,
            }
        }
        Expr::Inv(a) => inverse(&eval(a, alg)?)?,
        Expr::GradeInvolution(a) => eval(a, alg)?.grade_involution(),
        Expr::Grade(a, k) => eval(a, alg)?.grade_part(*k)?,
    })
}

pub fn parse_eval<S: Scalar>(src: &str, alg: &Arc<Algebra<S>>) -> Result<Multivector<S>, ExprError> {
    eval(&parse(src)?, alg)
}

/// Canonical text in the input basis, e.g. `2 + 3*e1 - e01 + e123`.
pub fn print<S: Scalar>(x: &Multivector<S>) -> String {
    format_terms(x.algebra().to_input_terms(x).iter())
}

/// `{"terms": {"<blade>": "<scalar>"}, "algebra": "<sig>"}`; the scalar
/// part is keyed `"1"`.
pub fn to_json<S: Scalar>(x: &Multivector<S>) -> serde_json::Value {
    let terms: serde_json::Map<String, serde_json::Value> = x
        .algebra()
        .to_input_terms(x)
        .into_iter()
        .map(|(b, c)| (b.name(), serde_json::Value::String(c.to_string())))
        .collect();
    serde_json::json!({ "terms": terms, "algebra": x.algebra().label() })
}
