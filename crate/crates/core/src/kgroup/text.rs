//! Text form of classes: a signed sum of monomials `c*u^p*v^q`, with `L`
//! standing for `u*v`.
//!
//! Grammar accepted by the parser (a superset of what `Display` emits):
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := unary ("*" unary)*
//! unary    := "-" unary | power
//! power    := atom ("^" exponent)?
//! atom     := integer | "u" | "v" | "L" | "(" expr ")"
//! exponent := "-"? integer | "(" "-"? integer ")"
//! ```
//!
//! Negative exponents are only allowed on units (monomials).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::HodgePoly;
use crate::scalar::Ring;
use crate::EPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse class at offset {offset}: {message}")]
pub struct ParseClassError {
    pub offset: usize,
    pub message: String,
}

fn write_monomial(f: &mut fmt::Formatter<'_>, p: i64, q: i64) -> fmt::Result {
    let pow = |f: &mut fmt::Formatter<'_>, name: &str, k: i64| {
        if k == 1 {
            write!(f, "{name}")
        } else {
            write!(f, "{name}^{k}")
        }
    };
    if p == q {
        return pow(f, "L", p);
    }
    if p != 0 {
        pow(f, "u", p)?;
        if q != 0 {
            write!(f, "*")?;
        }
    }
    if q != 0 {
        pow(f, "v", q)?;
    }
    Ok(())
}

impl<C: Ring + Signed + fmt::Display> fmt::Display for HodgePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(p, q), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if p == 0 && q == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, p, q)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParseClassError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, ch) = chars[i];
        match ch {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((off, Tok::Int(lit.parse().expect("digits"))));
            }
            'u' | 'v' | 'L' => {
                out.push((off, Tok::Var(ch)));
                i += 1;
            }
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((off, Tok::Op(ch)));
                i += 1;
            }
            _ => return Err(ParseClassError { offset: off, message: format!("unexpected character `{ch}`") }),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> ParseClassError {
        let offset = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end);
        ParseClassError { offset, message: message.into() }
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Op(o))) if *o == c)
    }

    fn expect_op(&mut self, c: char) -> Result<(), ParseClassError> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<EPoly, ParseClassError> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = acc + self.term()?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<EPoly, ParseClassError> {
        let mut acc = self.unary()?;
        while self.peek_op('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<EPoly, ParseClassError> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<EPoly, ParseClassError> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.exponent()?;
        if k >= 0 {
            Ok(base.pow(k as u32))
        } else {
            let inv = base.unit_inverse().ok_or_else(|| self.err("negative power of a non-unit"))?;
            Ok(inv.pow((-k) as u32))
        }
    }

    fn exponent(&mut self) -> Result<i64, ParseClassError> {
        let paren = self.peek_op('(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek_op('-');
        if neg {
            self.pos += 1;
        }
        let k = match self.toks.get(self.pos) {
            Some((_, Tok::Int(n))) => i64::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        if paren {
            self.expect_op(')')?;
        }
        Ok(if neg { -k } else { k })
    }

    fn atom(&mut self) -> Result<EPoly, ParseClassError> {
        let tok = self.toks.get(self.pos).cloned();
        match tok {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                Ok(EPoly::constant(n))
            }
            Some((_, Tok::Var(c))) => {
                self.pos += 1;
                Ok(match c {
                    'u' => EPoly::u(),
                    'v' => EPoly::v(),
                    _ => EPoly::lefschetz(),
                })
            }
            Some((_, Tok::Op('('))) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, `u`, `v`, `L` or `(`")),
        }
    }
}

impl FromStr for HodgePoly<BigInt> {
    type Err = ParseClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0, end: s.len() };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}
