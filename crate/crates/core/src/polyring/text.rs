//! Canonical text form and the expression parser.
//!
//! Grammar (whitespace insignificant, no implicit multiplication):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | variable | '(' expr ')'
//! variable := 'x' nat | 't' | 'u'
//! rational := int ('/' nat)?
//! ratfunc  := expr ('/' factor)?
//! ```
//!
//! `t` and `u` are the two formal arguments placed right after the `x`
//! variables: with `n` variables `x1..xn`, `t` has index `n` and `u` index
//! `n + 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 1 << 16;

/// Variable naming: indices below `n_x` print as `x{i+1}`, then `t`, `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarNames {
    pub n_x: usize,
}

impl VarNames {
    pub fn all_x() -> Self {
        VarNames { n_x: usize::MAX }
    }

    pub fn with_formal(n_x: usize) -> Self {
        VarNames { n_x }
    }

    pub fn name(&self, i: usize) -> String {
        if i < self.n_x {
            format!("x{}", i + 1)
        } else if i == self.n_x {
            "t".to_string()
        } else if i == self.n_x + 1 {
            "u".to_string()
        } else {
            format!("x{}", i + 1)
        }
    }
}

pub fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(m: &Monomial, names: VarNames) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names.name(i)),
            _ => parts.push(format!("{}^{}", names.name(i), e)),
        }
    }
    parts.join("*")
}

pub fn format_polynomial(p: &Polynomial, names: VarNames) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms_desc().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&format_rational(&a));
        } else if a.is_one() {
            out.push_str(&format_monomial(m, names));
        } else {
            out.push_str(&format_rational(&a));
            out.push('*');
            out.push_str(&format_monomial(m, names));
        }
    }
    out
}

pub fn format_rational_function(r: &RationalFunction, names: VarNames) -> String {
    if r.is_polynomial() {
        return format_polynomial(r.numer(), names);
    }
    let num = format_polynomial(r.numer(), names);
    let den = format_polynomial(r.denom(), names);
    let num = if r.numer().num_terms() > 1 { format!("({num})") } else { num };
    let den_bare = r.denom().num_terms() == 1 && r.denom().variables().len() == 1 && r.denom().leading_coeff().is_one();
    let den = if den_bare { den } else { format!("({den})") };
    format!("{num}/{den}")
}

/// Display adapter choosing variable names.
pub struct Named<'a, T>(pub &'a T, pub VarNames);

impl fmt::Display for Named<'_, Polynomial> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(self.0, self.1))
    }
}

impl fmt::Display for Named<'_, RationalFunction> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational_function(self.0, self.1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(self, VarNames::all_x()))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational_function(self, VarNames::all_x()))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X(usize),
    T,
    U,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn lex(text: &str, line: usize) -> Result<Lexed> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |col: usize, msg: String| Error::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, col)),
            '-' => toks.push((Tok::Minus, col)),
            '*' => toks.push((Tok::Star, col)),
            '^' => toks.push((Tok::Caret, col)),
            '/' => toks.push((Tok::Slash, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            't' => toks.push((Tok::T, col)),
            'u' => toks.push((Tok::U, col)),
            'x' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(err(col, "expected variable index after 'x'".into()));
                }
                let s: String = chars[start..j].iter().collect();
                let idx: usize = s.parse().map_err(|_| err(col, format!("variable index {s} too large")))?;
                if idx == 0 {
                    return Err(err(col, "variable index 0 (variables start at x1)".into()));
                }
                toks.push((Tok::X(idx - 1), col));
                i = j;
                continue;
            }
            d if d.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let s: String = chars[i..j].iter().collect();
                toks.push((Tok::Num(s.parse().unwrap()), col));
                i = j;
                continue;
            }
            other => return Err(err(col, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(Lexed { toks, end_col: chars.len() + 1 })
}

/// Intermediate tree; variables are resolved once the arity is known.
#[derive(Clone, Debug)]
enum Ast {
    Const(Rational),
    X(usize),
    T,
    U,
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ast::Neg(Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .ok()
                        .filter(|&e: &u32| e <= MAX_EXPONENT)
                        .ok_or_else(|| self.error("exponent overflow"))?;
                    self.pos += 1;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => Err(self.error("expected natural-number exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if let (Some(Tok::Slash), Some(Tok::Num(d))) = (self.peek().cloned(), self.peek_at(1).cloned()) {
                    if d.is_zero() {
                        self.pos += 1;
                        return Err(self.error("zero denominator"));
                    }
                    self.pos += 2;
                    return Ok(Ast::Const(Rational::new(n, d)));
                }
                Ok(Ast::Const(Rational::from_integer(n)))
            }
            Some(Tok::X(i)) => {
                self.pos += 1;
                Ok(Ast::X(i))
            }
            Some(Tok::T) => {
                self.pos += 1;
                Ok(Ast::T)
            }
            Some(Tok::U) => {
                self.pos += 1;
                Ok(Ast::U)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.error("expected ')'")),
                }
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.base()?)))
            }
            Some(_) => Err(self.error("unexpected token")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[derive(Default)]
struct Usage {
    max_x: usize,
    formal: bool,
}

fn scan(a: &Ast, u: &mut Usage) {
    match a {
        Ast::Const(_) => {}
        Ast::X(i) => u.max_x = u.max_x.max(i + 1),
        Ast::T | Ast::U => u.formal = true,
        Ast::Add(l, r) | Ast::Sub(l, r) | Ast::Mul(l, r) => {
            scan(l, u);
            scan(r, u);
        }
        Ast::Neg(b) | Ast::Pow(b, _) => scan(b, u),
    }
}

fn eval(a: &Ast, n_x: usize, arity: usize) -> Polynomial {
    match a {
        Ast::Const(c) => Polynomial::constant(arity, c.clone()),
        Ast::X(i) => Polynomial::var(arity, *i),
        Ast::T => Polynomial::var(arity, n_x),
        Ast::U => Polynomial::var(arity, n_x + 1),
        Ast::Add(l, r) => &eval(l, n_x, arity) + &eval(r, n_x, arity),
        Ast::Sub(l, r) => &eval(l, n_x, arity) - &eval(r, n_x, arity),
        Ast::Mul(l, r) => &eval(l, n_x, arity) * &eval(r, n_x, arity),
        Ast::Neg(b) => -eval(b, n_x, arity),
        Ast::Pow(b, e) => eval(b, n_x, arity).pow(*e),
    }
}

fn resolve(asts: &[&Ast], n_vars: Option<usize>, line: usize) -> Result<(usize, usize)> {
    let mut u = Usage::default();
    for a in asts {
        scan(a, &mut u);
    }
    let n_x = match n_vars {
        Some(n) if n < u.max_x => {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: format!("variable x{} exceeds declared count {n}", u.max_x),
            })
        }
        Some(n) => n,
        None => u.max_x,
    };
    let arity = if u.formal { n_x + 2 } else { n_x.max(1) };
    Ok((n_x, arity))
}

fn parse_tokens(text: &str, line: usize, allow_fraction: bool) -> Result<(Ast, Option<Ast>)> {
    let lexed = lex(text, line)?;
    let mut p = Parser { toks: &lexed.toks, pos: 0, line, end_col: lexed.end_col };
    let num = p.expr()?;
    let mut den = None;
    if allow_fraction {
        if let Some(Tok::Slash) = p.peek() {
            p.pos += 1;
            den = Some(p.factor()?);
        }
    }
    if p.pos != lexed.toks.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok((num, den))
}

/// Parses one polynomial. `n_vars` fixes the number of `x` variables;
/// otherwise it is the highest index used. The arity is `n_vars`, or
/// `n_vars + 2` when `t` or `u` occur.
pub fn parse_polynomial(text: &str, n_vars: Option<usize>) -> Result<Polynomial> {
    parse_polynomial_at(text, n_vars, 1)
}

pub fn parse_polynomial_at(text: &str, n_vars: Option<usize>, line: usize) -> Result<Polynomial> {
    let (ast, _) = parse_tokens(text, line, false)?;
    let (n_x, arity) = resolve(&[&ast], n_vars, line)?;
    Ok(eval(&ast, n_x, arity))
}

/// Parses `expr` or `expr / factor` into a rational function.
pub fn parse_rational_function(text: &str, n_vars: Option<usize>) -> Result<RationalFunction> {
    let (num, den) = parse_tokens(text, 1, true)?;
    let mut asts = vec![&num];
    if let Some(d) = &den {
        asts.push(d);
    }
    let (n_x, arity) = resolve(&asts, n_vars, 1)?;
    let n = eval(&num, n_x, arity);
    match den {
        None => Ok(RationalFunction::from_poly(n)),
        Some(d) => RationalFunction::new(n, eval(&d, n_x, arity)),
    }
}
