//! Expressions in one variable: recursive-descent parser, canonical printer,
//! real and complex evaluation, symbolic derivative and exact Taylor
//! coefficients at the origin.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' '-'? digits)?
//! primary := number | var | name '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, format_rational, parse_decimal, to_f64, Rational};

/// Byte offset of a node in its source text. Ignored by equality so that
/// reparsed and constructed trees compare structurally.
#[derive(Debug, Clone, Copy, Default)]
pub struct SourcePos(pub Option<usize>);

impl PartialEq for SourcePos {
    fn eq(&self, _other: &Self) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Ln,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Ln => "ln",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            "ln" => Func::Ln,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, SourcePos),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>, SourcePos),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected {}, found {}",
            self.offset,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Number(n) => format!("number {n}"),
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> std::result::Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'/' => Token::Slash,
            b'^' => Token::Caret,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                out.push((start, Token::Number(text[start..i].to_string())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: start,
                    expected: vec!["expression".into()],
                    found: format!("character {ch:?}"),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Token::End));
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> (usize, Token) {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    let (at, _) = self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), SourcePos(Some(at)));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if *self.peek() == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Token::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Token::Number(digits) if digits.bytes().all(|b| b.is_ascii_digit()) => {
                let exp: i32 = digits.parse().map_err(|_| self.error(&["integer exponent"]))?;
                self.bump();
                Ok(Expr::Pow(Box::new(base), if negative { -exp } else { exp }))
            }
            _ => Err(self.error(&["integer exponent"])),
        }
    }

    fn primary(&mut self) -> std::result::Result<Expr, ParseError> {
        match self.peek().clone() {
            Token::Number(text) => {
                let value = parse_decimal(&text).ok_or_else(|| self.error(&["number"]))?;
                self.bump();
                Ok(Expr::Const(value))
            }
            Token::Ident(name) if name == self.var => {
                self.bump();
                Ok(Expr::Var)
            }
            Token::Ident(name) => {
                let func = Func::from_name(&name)
                    .ok_or_else(|| self.error(&[self.var, "exp", "sin", "cos", "sqrt", "ln"]))?;
                let (at, _) = self.bump();
                if *self.peek() != Token::LParen {
                    return Err(self.error(&["'('"]));
                }
                self.bump();
                let arg = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["')'"]));
                }
                self.bump();
                Ok(Expr::Call(func, Box::new(arg), SourcePos(Some(at))))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Token::RParen {
                    return Err(self.error(&["')'"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(&["number", self.var, "function call", "'('"])),
        }
    }
}

/// Parses `text` as an expression in the variable `t`.
pub fn parse_function(text: &str) -> std::result::Result<Expr, ParseError> {
    parse_in(text, "t")
}

/// Parses `text` as an expression in the variable `var`.
pub fn parse_in(text: &str, var: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        pos: 0,
        var,
    };
    let e = p.expr()?;
    if *p.peek() != Token::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Const(c) if c.is_negative() || !is_decimal(c) => 3,
        Expr::Const(_) | Expr::Var | Expr::Call(..) => 5,
    }
}

fn is_decimal(q: &Rational) -> bool {
    let mut d = q.denom().clone();
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    d.is_one()
}

fn decimal_string(q: &Rational) -> String {
    if q.is_integer() {
        return q.numer().to_string();
    }
    let mut digits = 0usize;
    let mut scaled = q.clone();
    while !scaled.is_integer() {
        scaled *= Rational::from_integer(BigInt::from(10));
        digits += 1;
    }
    let n = scaled.to_integer().abs().to_string();
    let n = format!("{n:0>width$}", width = digits + 1);
    let (int_part, frac_part) = n.split_at(n.len() - digits);
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

struct Printer<'a> {
    expr: &'a Expr,
    var: &'a str,
}

impl Printer<'_> {
    fn child(&self, e: &Expr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = Printer { expr: e, var: self.var };
        if precedence(e) < min_prec {
            write!(f, "({inner})")
        } else {
            write!(f, "{inner}")
        }
    }
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Const(c) if is_decimal(c) && !c.is_negative() => f.write_str(&decimal_string(c)),
            Expr::Const(c) if is_decimal(c) => write!(f, "-{}", decimal_string(&-c)),
            Expr::Const(c) => f.write_str(&format_rational(c)),
            Expr::Var => f.write_str(self.var),
            Expr::Neg(a) => {
                f.write_str("-")?;
                self.child(a, 3, f)
            }
            Expr::Add(a, b) => {
                self.child(a, 1, f)?;
                f.write_str(" + ")?;
                self.child(b, 2, f)
            }
            Expr::Sub(a, b) => {
                self.child(a, 1, f)?;
                f.write_str(" - ")?;
                self.child(b, 2, f)
            }
            Expr::Mul(a, b) => {
                self.child(a, 2, f)?;
                f.write_str("*")?;
                self.child(b, 3, f)
            }
            Expr::Div(a, b, _) => {
                self.child(a, 2, f)?;
                f.write_str("/")?;
                self.child(b, 3, f)
            }
            Expr::Pow(a, n) => {
                self.child(a, 5, f)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, a, _) => {
                write!(f, "{}(", func.name())?;
                self.child(a, 0, f)?;
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Printer { expr: self, var: "t" })
    }
}

/// Scalars an expression can be evaluated over.
pub trait Scalar: Copy + fmt::Display {
    fn from_rational(q: &Rational) -> Self;
    fn neg(self) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn div(self, o: Self) -> std::result::Result<Self, String>;
    fn powi(self, n: i32) -> std::result::Result<Self, String>;
    fn call(self, func: Func) -> std::result::Result<Self, String>;
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }
    fn neg(self) -> Self {
        -self
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        if o == 0.0 {
            return Err("division by zero".into());
        }
        Ok(self / o)
    }
    fn powi(self, n: i32) -> std::result::Result<Self, String> {
        if n < 0 && self == 0.0 {
            return Err("negative power of zero".into());
        }
        Ok(f64::powi(self, n))
    }
    fn call(self, func: Func) -> std::result::Result<Self, String> {
        Ok(match func {
            Func::Exp => self.exp(),
            Func::Sin => self.sin(),
            Func::Cos => self.cos(),
            Func::Sqrt if self < 0.0 => return Err(format!("sqrt of negative value {self}")),
            Func::Sqrt => self.sqrt(),
            Func::Ln if self <= 0.0 => return Err(format!("ln of non-positive value {self}")),
            Func::Ln => self.ln(),
        })
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(to_f64(q), 0.0)
    }
    fn neg(self) -> Self {
        -self
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn div(self, o: Self) -> std::result::Result<Self, String> {
        if o.norm() == 0.0 {
            return Err("division by zero".into());
        }
        Ok(self / o)
    }
    fn powi(self, n: i32) -> std::result::Result<Self, String> {
        if n < 0 && self.norm() == 0.0 {
            return Err("negative power of zero".into());
        }
        Ok(Complex64::powi(&self, n))
    }
    fn call(self, func: Func) -> std::result::Result<Self, String> {
        Ok(match func {
            Func::Exp => self.exp(),
            Func::Sin => self.sin(),
            Func::Cos => self.cos(),
            Func::Sqrt => self.sqrt(),
            Func::Ln if self.norm() == 0.0 => return Err("ln of zero".into()),
            Func::Ln => self.ln(),
        })
    }
}

fn located(pos: SourcePos, at: impl fmt::Display, msg: String) -> Error {
    match pos.0 {
        Some(offset) => Error::Eval(format!("{msg} (operator at offset {offset}, variable = {at})")),
        None => Error::Eval(format!("{msg} (variable = {at})")),
    }
}

impl Expr {
    pub fn constant(q: Rational) -> Self {
        Expr::Const(q)
    }

    /// Evaluates at `x`; domain violations carry the source offset when known.
    pub fn eval<T: Scalar>(&self, x: T) -> Result<T> {
        Ok(match self {
            Expr::Const(c) => T::from_rational(c),
            Expr::Var => x,
            Expr::Neg(a) => a.eval(x)?.neg(),
            Expr::Add(a, b) => a.eval(x)?.add(b.eval(x)?),
            Expr::Sub(a, b) => a.eval(x)?.sub(b.eval(x)?),
            Expr::Mul(a, b) => a.eval(x)?.mul(b.eval(x)?),
            Expr::Div(a, b, pos) => a
                .eval(x)?
                .div(b.eval(x)?)
                .map_err(|m| located(*pos, x, m))?,
            Expr::Pow(a, n) => a.eval(x)?.powi(*n).map_err(|m| located(SourcePos(None), x, m))?,
            Expr::Call(func, a, pos) => a.eval(x)?.call(*func).map_err(|m| located(*pos, x, m))?,
        })
    }

    /// Canonical text with the given variable name.
    pub fn to_string_in(&self, var: &str) -> String {
        Printer { expr: self, var }.to_string()
    }

    /// Replaces the variable by `by`.
    pub fn substitute(&self, by: &Expr) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(by));
        match self {
            Expr::Const(_) => self.clone(),
            Expr::Var => by.clone(),
            Expr::Neg(a) => Expr::Neg(sub(a)),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b, p) => Expr::Div(sub(a), sub(b), *p),
            Expr::Pow(a, n) => Expr::Pow(sub(a), *n),
            Expr::Call(func, a, p) => Expr::Call(*func, sub(a), *p),
        }
    }

    /// Symbolic derivative with respect to the variable.
    pub fn derivative(&self) -> Expr {
        use Expr::*;
        let b = Box::new;
        match self {
            Const(_) => zero(),
            Var => one(),
            Neg(a) => neg(a.derivative()),
            Add(x, y) => add(x.derivative(), y.derivative()),
            Sub(x, y) => sub(x.derivative(), y.derivative()),
            Mul(x, y) => add(
                mul(x.derivative(), (**y).clone()),
                mul((**x).clone(), y.derivative()),
            ),
            Div(x, y, p) => Div(
                b(sub(
                    mul(x.derivative(), (**y).clone()),
                    mul((**x).clone(), y.derivative()),
                )),
                b(Pow(y.clone(), 2)),
                *p,
            ),
            Pow(_, 0) => zero(),
            Pow(x, n) => mul(
                mul(Const(Rational::from_integer(BigInt::from(*n))), pow((**x).clone(), n - 1)),
                x.derivative(),
            ),
            Call(func, x, p) => {
                let inner = x.derivative();
                let outer = match func {
                    Func::Exp => self.clone(),
                    Func::Sin => Call(Func::Cos, x.clone(), *p),
                    Func::Cos => neg(Call(Func::Sin, x.clone(), *p)),
                    Func::Sqrt => {
                        return Div(b(inner), b(mul(Const(Rational::from_integer(2.into())), self.clone())), *p)
                    }
                    Func::Ln => return Div(b(inner), x.clone(), *p),
                };
                mul(outer, inner)
            }
        }
    }

    /// Exact coefficients `p_0..=p_order` of the Taylor expansion at 0,
    /// `f(t) = sum p_k t^k`, when every coefficient is rational.
    pub fn taylor_plain(&self, order: usize) -> Option<Vec<Rational>> {
        let n = order + 1;
        let zeros = || vec![Rational::zero(); n];
        Some(match self {
            Expr::Const(c) => {
                let mut v = zeros();
                v[0] = c.clone();
                v
            }
            Expr::Var => {
                let mut v = zeros();
                if n > 1 {
                    v[1] = Rational::one();
                }
                v
            }
            Expr::Neg(a) => a.taylor_plain(order)?.into_iter().map(|c| -c).collect(),
            Expr::Add(a, b) => zip_with(&a.taylor_plain(order)?, &b.taylor_plain(order)?, |x, y| x + y),
            Expr::Sub(a, b) => zip_with(&a.taylor_plain(order)?, &b.taylor_plain(order)?, |x, y| x - y),
            Expr::Mul(a, b) => series_mul(&a.taylor_plain(order)?, &b.taylor_plain(order)?),
            Expr::Div(a, b, _) => {
                series_mul(&a.taylor_plain(order)?, &series_recip(&b.taylor_plain(order)?)?)
            }
            Expr::Pow(a, k) => {
                let base = a.taylor_plain(order)?;
                let base = if *k < 0 { series_recip(&base)? } else { base };
                let mut acc = zeros();
                acc[0] = Rational::one();
                for _ in 0..k.unsigned_abs() {
                    acc = series_mul(&acc, &base);
                }
                acc
            }
            Expr::Call(func, a, _) => {
                let g = a.taylor_plain(order)?;
                match func {
                    Func::Exp if g[0].is_zero() => series_exp(&g),
                    Func::Sin if g[0].is_zero() => series_sin_cos(&g).0,
                    Func::Cos if g[0].is_zero() => series_sin_cos(&g).1,
                    Func::Sqrt => series_sqrt(&g)?,
                    Func::Ln if g[0].is_one() => series_ln(&g),
                    _ => return None,
                }
            }
        })
    }

    /// EGF-normalized Taylor coefficients `c_k = f^{(k)}(0)`, so that
    /// `f(t) = sum c_k t^k/k!`.
    pub fn taylor_coefficients(&self, order: usize) -> Option<Vec<Rational>> {
        Some(
            self.taylor_plain(order)?
                .into_iter()
                .enumerate()
                .map(|(k, c)| c * Rational::from_integer(factorial(k)))
                .collect(),
        )
    }
}

/// A parsed `f(t)` together with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionExpr {
    ast: Expr,
    source: String,
}

impl FunctionExpr {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(FunctionExpr {
            ast: parse_function(text)?,
            source: text.trim().to_string(),
        })
    }

    pub fn from_ast(ast: Expr) -> Self {
        let source = ast.to_string();
        FunctionExpr { ast, source }
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        self.ast.eval(t)
    }

    pub fn derivative(&self) -> Self {
        Self::from_ast(self.ast.derivative())
    }

    /// `f(d t)`.
    pub fn rescaled(&self, d: Rational) -> Self {
        let by = mul(Expr::Const(d), Expr::Var);
        Self::from_ast(self.ast.substitute(&by))
    }

    /// `A f + B g`.
    pub fn combine(a: Rational, f: &Self, b: Rational, g: &Self) -> Self {
        Self::from_ast(Expr::Add(
            Box::new(Expr::Mul(Box::new(Expr::Const(a)), Box::new(f.ast.clone()))),
            Box::new(Expr::Mul(Box::new(Expr::Const(b)), Box::new(g.ast.clone()))),
        ))
    }

    /// `c_0..=c_order` with `f(t) = sum c_k t^k/k!`, when exact.
    pub fn taylor_coefficients(&self, order: usize) -> Option<Vec<Rational>> {
        self.ast.taylor_coefficients(order)
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn zero() -> Expr {
    Expr::Const(Rational::zero())
}

fn one() -> Expr {
    Expr::Const(Rational::one())
}

fn is_const(e: &Expr, v: i64) -> bool {
    matches!(e, Expr::Const(c) if *c == Rational::from_integer(BigInt::from(v)))
}

fn neg(a: Expr) -> Expr {
    if is_const(&a, 0) {
        return a;
    }
    Expr::Neg(Box::new(a))
}

fn add(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0) {
        return b;
    }
    if is_const(&b, 0) {
        return a;
    }
    Expr::Add(Box::new(a), Box::new(b))
}

fn sub(a: Expr, b: Expr) -> Expr {
    if is_const(&b, 0) {
        return a;
    }
    if is_const(&a, 0) {
        return neg(b);
    }
    Expr::Sub(Box::new(a), Box::new(b))
}

fn mul(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0) || is_const(&b, 0) {
        return zero();
    }
    if is_const(&a, 1) {
        return b;
    }
    if is_const(&b, 1) {
        return a;
    }
    Expr::Mul(Box::new(a), Box::new(b))
}

fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => one(),
        1 => a,
        _ => Expr::Pow(Box::new(a), n),
    }
}

fn zip_with(a: &[Rational], b: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

fn series_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len();
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b[..n - i].iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_recip(a: &[Rational]) -> Option<Vec<Rational>> {
    if a[0].is_zero() {
        return None;
    }
    let inv0 = Rational::one() / &a[0];
    let mut out = vec![inv0.clone()];
    for k in 1..a.len() {
        let acc: Rational = (1..=k).map(|j| &a[j] * &out[k - j]).sum();
        out.push(-acc * &inv0);
    }
    Some(out)
}

fn kr(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

// h = exp(g), g_0 = 0: k h_k = sum_{j=1}^k j g_j h_{k-j}
fn series_exp(g: &[Rational]) -> Vec<Rational> {
    let mut h = vec![Rational::one()];
    for k in 1..g.len() {
        let acc: Rational = (1..=k).map(|j| kr(j) * &g[j] * &h[k - j]).sum();
        h.push(acc / kr(k));
    }
    h
}

// s' = c g', c' = -s g'
fn series_sin_cos(g: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut s = vec![Rational::zero()];
    let mut c = vec![Rational::one()];
    for k in 1..g.len() {
        let sk: Rational = (1..=k).map(|j| kr(j) * &g[j] * &c[k - j]).sum();
        let ck: Rational = (1..=k).map(|j| kr(j) * &g[j] * &s[k - j]).sum();
        s.push(sk / kr(k));
        c.push(-ck / kr(k));
    }
    (s, c)
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    let root = Rational::new(n, d);
    (&root * &root == *q).then_some(root)
}

fn series_sqrt(g: &[Rational]) -> Option<Vec<Rational>> {
    let h0 = rational_sqrt(&g[0])?;
    if h0.is_zero() {
        return None;
    }
    let two_h0 = &h0 * kr(2);
    let mut h = vec![h0];
    for k in 1..g.len() {
        let acc: Rational = (1..k).map(|j| &h[j] * &h[k - j]).sum();
        h.push((&g[k] - acc) / &two_h0);
    }
    Some(h)
}

// h = ln g, g_0 = 1: k h_k = k g_k - sum_{j=1}^{k-1} j h_j g_{k-j}
fn series_ln(g: &[Rational]) -> Vec<Rational> {
    let mut h = vec![Rational::zero()];
    for k in 1..g.len() {
        let acc: Rational = (1..k).map(|j| kr(j) * &h[j] * &g[k - j]).sum();
        h.push((kr(k) * &g[k] - acc) / kr(k));
    }
    h
}
