//! Expression syntax for polynomials on a jet chart.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' integer)?
//! atom  := integer | name | 'hessdet' '(' name ')' | '(' expr ')'
//! ```
//!
//! Division is allowed only by nonzero constants, so `3/4*x` is the
//! rational coefficient form used by the printer.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::jet::{JetChart, JetVar};
use crate::poly::resultant::determinant;
use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Name(chars[start..i].iter().collect()), line: l0, col: c0 });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), line: l0, col: c0 });
            col += 1;
            i += 1;
            continue;
        }
        return Err(Error::Parse { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    chart: &'a JetChart,
}

type P = Polynomial<Rational>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: t.line, col: t.col, msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek().tok == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            let t = self.peek().clone();
            self.err(&t, format!("expected `{op}`"))
        }
    }

    fn expr(&mut self) -> Result<P> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek().tok == Tok::Op('/') {
                self.pos += 1;
                let t = self.peek().clone();
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    return self.err(&t, "division only by a nonzero constant");
                }
                acc = acc.scale(&(Rational::from_integer(1.into()) / d.constant_term()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<P> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<P> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(e) => {
                self.pos += 1;
                match e.to_u32() {
                    Some(e) => Ok(base.pow(e)),
                    None => self.err(&t, "exponent too large"),
                }
            }
            _ => self.err(&t, "exponent must be a non-negative integer"),
        }
    }

    fn atom(&mut self) -> Result<P> {
        let nv = self.chart.nvars();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(P::constant(nv, Rational::from_integer(v.clone())))
            }
            Tok::Name(name) if name == "hessdet" => {
                self.pos += 1;
                self.expect('(')?;
                let arg = self.peek().clone();
                let Tok::Name(y) = &arg.tok else {
                    return self.err(&arg, "hessdet expects a dependent variable");
                };
                self.pos += 1;
                let j = match self.chart.lookup(y).map(|i| self.chart.var(i)) {
                    Some(JetVar::Y(j)) => *j,
                    _ => return self.err(&arg, format!("`{y}` is not a dependent variable of the chart")),
                };
                self.expect(')')?;
                hessian_determinant(self.chart, j).or_else(|_| self.err(&t, "hessdet needs a chart of order at least 2"))
            }
            Tok::Name(name) => {
                self.pos += 1;
                match self.chart.lookup(name) {
                    Some(i) => Ok(P::var(nv, i)),
                    None => self.err(&t, format!("unknown variable `{name}` for chart {}", self.chart)),
                }
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(c) => self.err(&t, format!("unexpected `{c}`")),
            Tok::End => self.err(&t, "unexpected end of input"),
        }
    }
}

/// `det(∂²y_j/∂x_a∂x_b)` over the second-order jets of `y_j`.
pub fn hessian_determinant(chart: &JetChart, j: usize) -> Result<P> {
    let nv = chart.nvars();
    let k = chart.k();
    let mut m = vec![vec![P::zero(nv); k]; k];
    for a in 0..k {
        for b in 0..k {
            let idx = chart.jet(j, &[a + 1, b + 1]).ok_or_else(|| Error::Bounds("second-order jets missing".into()))?;
            m[a][b] = P::var(nv, idx);
        }
    }
    Ok(determinant(m, nv))
}

/// Parses `src` into a polynomial on `chart`.
pub fn parse_expression(src: &str, chart: &JetChart) -> Result<P> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, chart };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    Ok(e)
}

/// Canonical text of `p` on `chart`.
pub fn format_polynomial(p: &P, chart: &JetChart) -> String {
    p.to_text(&chart.names())
}

/// Smallest chart order on which `p` lives.
pub fn minimal_order(p: &P, chart: &JetChart) -> usize {
    p.vars_used().iter().map(|&v| chart.var(v).order()).max().unwrap_or(0)
}
