//! Text syntax for forms and expressions.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := number ['i'] | 'i' | 'x'k | 'z' | 'exp' '(' sum ')' | '(' sum ')'
//! ```
//!
//! Numbers are integers or decimals (`12`, `0.25`); `p/q` is ordinary
//! division by a constant. Forms use the variables `x0 … xn`; expressions use
//! `z` and `exp(...)`. Whitespace is insignificant.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::expr::AnalyticExpr;
use super::homogeneous::HomogeneousPoly;
use super::monomial::Monomial;
use super::rational::{ComplexRational, Rational};
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Form { nvars: usize },
    Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Form(HomogeneousPoly),
    Expr(AnalyticExpr),
}

pub fn parse_input(text: &str, kind: InputKind) -> Result<Parsed, PolyError> {
    match kind {
        InputKind::Form { nvars } => parse_form(text, nvars).map(Parsed::Form),
        InputKind::Expr => parse_expr(text).map(Parsed::Expr),
    }
}

/// Parses a homogeneous form in `x0 … x{nvars-1}`.
pub fn parse_form(text: &str, nvars: usize) -> Result<HomogeneousPoly, PolyError> {
    let ast = Parser::new(text)?.parse_all()?;
    let sparse: SparsePoly = eval(&ast, &FormCtx { nvars })?;
    let mut degrees: Vec<u32> = sparse.terms.keys().map(|m| m.degree()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    match degrees.as_slice() {
        [] => Ok(HomogeneousPoly::zero(nvars, 0)),
        [d] => HomogeneousPoly::from_terms(nvars, *d, sparse.terms),
        _ => Err(PolyError::Inhomogeneous(degrees)),
    }
}

pub fn parse_expr(text: &str) -> Result<AnalyticExpr, PolyError> {
    let ast = Parser::new(text)?.parse_all()?;
    eval(&ast, &ExprCtx)
}

/// Exact rational from an integer, decimal, or `p/q` literal.
pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_decimal(p.trim(), 0)?;
        let q = parse_decimal(q.trim(), p.to_string().len() + 1)?;
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        return Ok(p / q);
    }
    parse_decimal(t, 0)
}

fn parse_decimal(t: &str, position: usize) -> Result<Rational, PolyError> {
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let syntax = || PolyError::Syntax {
        position,
        message: format!("invalid number `{t}`"),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(syntax());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(syntax());
    }
    let num = BigInt::from_str(&digits).map_err(|_| syntax())?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Imag(Rational),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_digit() || chars[k].1 == '.') {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            let value = parse_decimal(&s, pos)?;
            let next_is_bare_i = k < chars.len()
                && chars[k].1 == 'i'
                && !(k + 1 < chars.len() && chars[k + 1].1.is_ascii_alphanumeric());
            if next_is_bare_i {
                k += 1;
                out.push((Tok::Imag(value), pos));
            } else {
                out.push((Tok::Num(value), pos));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Ident(s), pos));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(PolyError::Syntax {
                        position: pos,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            out.push((tok, pos));
            k += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Node {
    Const(ComplexRational),
    Var(String, usize),
    Exp(Box<Node>, usize),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>, usize),
    Pow(Box<Node>, u32),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, PolyError> {
        Ok(Self {
            toks: tokenize(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn error(&self, message: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            position: self.here(),
            message: message.into(),
        }
    }

    fn parse_all(mut self) -> Result<Node, PolyError> {
        if self.toks.is_empty() {
            return Err(self.error("empty input"));
        }
        let n = self.sum()?;
        if self.pos != self.toks.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(n)
    }

    fn sum(&mut self) -> Result<Node, PolyError> {
        let mut lhs = self.product()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.product()?;
            lhs = if c == '+' {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Node, PolyError> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            let at = self.here();
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if c == '*' {
                Node::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Div(Box::new(lhs), Box::new(rhs), at)
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, PolyError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(r)) if r.is_integer() => {
                    let e = u32::try_from(r.to_integer()).map_err(|_| self.error("exponent out of range"))?;
                    self.pos += 1;
                    return Ok(Node::Pow(Box::new(base), e));
                }
                _ => return Err(self.error("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, PolyError> {
        let at = self.here();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Num(r) => Ok(Node::Const(ComplexRational::real(r))),
            Tok::Imag(r) => Ok(Node::Const(ComplexRational::new(Rational::zero(), r))),
            Tok::Ident(name) if name == "i" => Ok(Node::Const(ComplexRational::i())),
            Tok::Ident(name) if name == "exp" => {
                if self.peek() != Some(&Tok::LParen) {
                    return Err(self.error("expected `(` after exp"));
                }
                self.pos += 1;
                let inner = self.sum()?;
                self.expect_rparen()?;
                Ok(Node::Exp(Box::new(inner), at))
            }
            Tok::Ident(name) => Ok(Node::Var(name, at)),
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::RParen | Tok::Op(_) => {
                self.pos -= 1;
                Err(self.error("expected a number, variable, or `(`"))
            }
        }
    }

    fn expect_rparen(&mut self) -> Result<(), PolyError> {
        if self.peek() == Some(&Tok::RParen) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error("expected `)`"))
        }
    }
}

/// Target algebra for evaluating a parse tree.
trait Algebra: Sized {
    fn constant(&self, c: ComplexRational) -> Self::Value;
    fn var(&self, name: &str, position: usize) -> Result<Self::Value, PolyError>;
    fn exp(&self, arg: &Self::Value, position: usize) -> Result<Self::Value, PolyError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn scale(&self, a: &Self::Value, c: &ComplexRational) -> Self::Value;
    fn as_constant(&self, a: &Self::Value) -> Option<ComplexRational>;
    type Value: Clone;
}

fn eval<A: Algebra>(node: &Node, alg: &A) -> Result<A::Value, PolyError> {
    Ok(match node {
        Node::Const(c) => alg.constant(c.clone()),
        Node::Var(name, pos) => alg.var(name, *pos)?,
        Node::Exp(inner, pos) => alg.exp(&eval(inner, alg)?, *pos)?,
        Node::Neg(a) => alg.scale(&eval(a, alg)?, &ComplexRational::from_integer(-1)),
        Node::Add(a, b) => alg.add(&eval(a, alg)?, &eval(b, alg)?),
        Node::Sub(a, b) => {
            let nb = alg.scale(&eval(b, alg)?, &ComplexRational::from_integer(-1));
            alg.add(&eval(a, alg)?, &nb)
        }
        Node::Mul(a, b) => alg.mul(&eval(a, alg)?, &eval(b, alg)?),
        Node::Div(a, b, pos) => {
            let d = eval(b, alg)?;
            let c = alg.as_constant(&d).ok_or(PolyError::Syntax {
                position: *pos,
                message: "division is only allowed by constants".into(),
            })?;
            let inv = c.inv().ok_or(PolyError::DivisionByZero)?;
            alg.scale(&eval(a, alg)?, &inv)
        }
        Node::Pow(a, e) => {
            let base = eval(a, alg)?;
            let mut acc = alg.constant(ComplexRational::one());
            for _ in 0..*e {
                acc = alg.mul(&acc, &base);
            }
            acc
        }
    })
}

/// Inhomogeneous intermediate used while parsing forms.
#[derive(Clone, Debug, Default)]
struct SparsePoly {
    terms: BTreeMap<Monomial, ComplexRational>,
}

struct FormCtx {
    nvars: usize,
}

impl Algebra for FormCtx {
    type Value = SparsePoly;

    fn constant(&self, c: ComplexRational) -> SparsePoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(self.nvars), c);
        }
        SparsePoly { terms }
    }

    fn var(&self, name: &str, position: usize) -> Result<SparsePoly, PolyError> {
        let k = name
            .strip_prefix('x')
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| PolyError::Syntax {
                position,
                message: format!("unknown variable `{name}` in a form"),
            })?;
        if k >= self.nvars {
            return Err(PolyError::Syntax {
                position,
                message: format!("variable x{k} out of range for {} variables", self.nvars),
            });
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(self.nvars, k), ComplexRational::one());
        Ok(SparsePoly { terms })
    }

    fn exp(&self, _arg: &SparsePoly, position: usize) -> Result<SparsePoly, PolyError> {
        Err(PolyError::Syntax {
            position,
            message: "exp() is not allowed in a form".into(),
        })
    }

    fn add(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            let e = terms.entry(m.clone()).or_insert_with(ComplexRational::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        SparsePoly { terms }
    }

    fn mul(&self, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
        let mut terms: BTreeMap<Monomial, ComplexRational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e = terms.entry(ma.mul(mb)).or_insert_with(ComplexRational::zero);
                *e += &(ca * cb);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        SparsePoly { terms }
    }

    fn scale(&self, a: &SparsePoly, c: &ComplexRational) -> SparsePoly {
        let mut terms: BTreeMap<_, _> = a.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        terms.retain(|_, c| !c.is_zero());
        SparsePoly { terms }
    }

    fn as_constant(&self, a: &SparsePoly) -> Option<ComplexRational> {
        match a.terms.len() {
            0 => Some(ComplexRational::zero()),
            1 => a.terms.get(&Monomial::one(self.nvars)).cloned(),
            _ => None,
        }
    }
}

struct ExprCtx;

impl Algebra for ExprCtx {
    type Value = AnalyticExpr;

    fn constant(&self, c: ComplexRational) -> AnalyticExpr {
        AnalyticExpr::constant(c)
    }

    fn var(&self, name: &str, position: usize) -> Result<AnalyticExpr, PolyError> {
        if name == "z" {
            Ok(AnalyticExpr::z())
        } else {
            Err(PolyError::Syntax {
                position,
                message: format!("unknown identifier `{name}` in an expression"),
            })
        }
    }

    fn exp(&self, arg: &AnalyticExpr, position: usize) -> Result<AnalyticExpr, PolyError> {
        AnalyticExpr::exp(arg).map_err(|_| PolyError::Syntax {
            position,
            message: "exp() argument must be a polynomial in z".into(),
        })
    }

    fn add(&self, a: &AnalyticExpr, b: &AnalyticExpr) -> AnalyticExpr {
        a.add(b)
    }

    fn mul(&self, a: &AnalyticExpr, b: &AnalyticExpr) -> AnalyticExpr {
        a.mul(b)
    }

    fn scale(&self, a: &AnalyticExpr, c: &ComplexRational) -> AnalyticExpr {
        a.scale(c)
    }

    fn as_constant(&self, a: &AnalyticExpr) -> Option<ComplexRational> {
        a.as_constant()
    }
}

impl FromStr for AnalyticExpr {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_expr(s)
    }
}
