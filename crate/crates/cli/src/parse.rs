//! Parser for Ore polynomial literals.
//!
//! Grammar (whitespace is ignored between tokens):
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := number ('/' number)? | ('Y' | 'X' | 'k' | 'q') power? | '(' expr ')' power?
//! power  := '^' digits
//! ```
//!
//! A literal is written in normal form: within a term every factor that
//! involves `X` is a pure power of `X` once the first one has appeared, so
//! `Y^2*X^3` and `(Y + 1)*X` parse but `X*Y` does not. The parameters `k`
//! and `q` are only accepted by coefficient rings that have them.

use std::fmt;

use homore::ore::OrePoly;
use homore::ring::{ParamPoly, Polynomial, Rational, Scalar, KQ};
use num_bigint::BigInt;
use thiserror::Error;

/// A coefficient ring whose elements can be written in a literal.
pub trait Coefficient: Scalar {
    fn from_rational(r: &Rational) -> Self;
    /// The named parameter, if the ring has one.
    fn symbol(name: &str) -> Option<Self>;
}

impl Coefficient for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn symbol(_: &str) -> Option<Self> {
        None
    }
}

impl Coefficient for ParamPoly<KQ> {
    fn from_rational(r: &Rational) -> Self {
        ParamPoly::constant(r.clone())
    }
    fn symbol(name: &str) -> Option<Self> {
        ParamPoly::param(name)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parses `text` into an Ore polynomial over `S`.
pub fn parse_ore_poly<S: Coefficient>(text: &str) -> Result<OrePoly<S>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(value)
}

impl Parser<'_> {
    fn error(&self, message: impl fmt::Display) -> ParseError {
        ParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<S: Coefficient>(&mut self) -> Result<OrePoly<S>, ParseError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.negated() } else { first };
        loop {
            if self.eat(b'+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<S: Coefficient>(&mut self) -> Result<OrePoly<S>, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let start = self.pos;
            let f = self.factor()?;
            acc = normal_form_product(&acc, &f).ok_or_else(|| ParseError {
                offset: start,
                message: "only powers of X may follow X in a term".into(),
            })?;
        }
        Ok(acc)
    }

    fn factor<S: Coefficient>(&mut self) -> Result<OrePoly<S>, ParseError> {
        let start = self.pos;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let value = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.digits()?;
                    if d == BigInt::from(0) {
                        return Err(ParseError { offset: at, message: "zero denominator".into() });
                    }
                    Rational::new(n, d)
                } else {
                    Rational::new(n, 1)
                };
                Ok(OrePoly::constant(S::from_rational(&value)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                let e = self.power()?;
                power(&inner, e).ok_or_else(|| ParseError {
                    offset: start,
                    message: "only pure powers of X may be raised to a power when X is involved".into(),
                })
            }
            Some(b'Y') => {
                self.pos += 1;
                let e = self.power()?;
                Ok(OrePoly::from_poly(Polynomial::monomial(S::one(), e)))
            }
            Some(b'X') => {
                self.pos += 1;
                let e = self.power()?;
                Ok(OrePoly::x_pow(e))
            }
            Some(c @ (b'k' | b'q')) => {
                let name = (c as char).to_string();
                let s = S::symbol(&name).ok_or_else(|| self.error(format!("parameter `{name}` needs --k symbolic or --q symbolic")))?;
                self.pos += 1;
                let e = self.power()?;
                let mut v = S::one();
                for _ in 0..e {
                    v = v.times(&s);
                }
                Ok(OrePoly::constant(v))
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }

    fn power(&mut self) -> Result<usize, ParseError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let at = self.pos;
        let n = self.digits()?;
        usize::try_from(n).ok().filter(|&e| e <= 4096).ok_or(ParseError { offset: at, message: "exponent too large".into() })
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("nonempty digit string"))
    }
}

fn is_x_power<S: Scalar>(p: &OrePoly<S>) -> bool {
    let mut terms = p.terms();
    matches!((terms.next(), terms.next()), (Some((_, a)), None) if *a == Polynomial::one())
}

fn has_x<S: Scalar>(p: &OrePoly<S>) -> bool {
    p.degree().is_some_and(|d| d > 0)
}

/// The formal product of two normal-form literals, or `None` if it would
/// move a coefficient past `X`.
fn normal_form_product<S: Scalar>(a: &OrePoly<S>, b: &OrePoly<S>) -> Option<OrePoly<S>> {
    if has_x(a) && !is_x_power(b) {
        return None;
    }
    let mut out = OrePoly::zero();
    for (m, p) in a.terms() {
        for (n, q) in b.terms() {
            out = out.plus(&OrePoly::monomial(p.times(q), m + n));
        }
    }
    Some(out)
}

fn power<S: Scalar>(p: &OrePoly<S>, e: usize) -> Option<OrePoly<S>> {
    if e == 1 {
        return Some(p.clone());
    }
    if has_x(p) && !is_x_power(p) {
        return None;
    }
    let mut acc = OrePoly::one();
    for _ in 0..e {
        acc = normal_form_product(&acc, p)?;
    }
    Some(acc)
}
