//! Sparse multivariate polynomials, the input-polynomial grammar, and the
//! bivariate algebra (gcd, square-free decomposition) the curve resolver
//! needs.
//!
//! Input grammar (variables `x`, `y`, `z`, `w` in that order):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*      divisors must be nonzero constants
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "x" | "y" | "z" | "w" | "(" expr ")"
//! ```
//!
//! Juxtaposition is not multiplication: `2x` is rejected, write `2*x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::Poly;
use crate::scalar::Ring;
use crate::QPoly;

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];

/// A polynomial in `nvars` variables with coefficients in `R`, stored as a
/// map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<R> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> MPoly<R> {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: R, nvars: usize) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    /// The coordinate function `x_i`.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, R::one())])
    }

    pub fn monomial(c: R, exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        Self::from_terms(n, [(exponents, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, R)>>(nvars: usize, terms: I) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The same polynomial viewed in `n >= nvars` variables.
    pub fn with_nvars(&self, n: usize) -> Self {
        assert!(n >= self.nvars, "cannot drop variables");
        MPoly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(n, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Order of vanishing at the origin (lowest total degree of a term).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == k).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.total_degree()
    }

    /// `Some((c, w))` when the polynomial is the single term `c x^w`.
    pub fn as_monomial(&self) -> Option<(R, Vec<u32>)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(e, c)| (c.clone(), e.clone()))
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.nvars);
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MPoly<S> {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Rewrites each term `c x^e` as `c x^{g(e)}` (the map must be injective
    /// on the support, or collisions are summed).
    pub fn map_exponents(&self, nvars: usize, g: impl Fn(&[u32]) -> Vec<u32>) -> Self {
        MPoly::from_terms(nvars, self.terms.iter().map(|(e, c)| (g(e), c.clone())))
    }

    /// Substitutes `x_i -> subs[i]`.
    pub fn substitute(&self, subs: &[MPoly<R>]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let n = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut acc = MPoly::zero(n);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone(), n);
            for (s, &k) in subs.iter().zip(e) {
                t = &t * &s.pow(k);
            }
            acc = acc + t;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MPoly::constant(R::one(), self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|a| a.clone() * c.clone())
    }
}

impl<R: Ring> Add for MPoly<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        let n = self.nvars.max(rhs.nvars);
        if self.nvars < n {
            self = self.with_nvars(n);
        }
        let rhs = if rhs.nvars < n { rhs.with_nvars(n) } else { rhs };
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<R: Ring> Neg for MPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly { nvars: self.nvars, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<R: Ring> Sub for MPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for &MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, rhs: &MPoly<R>) -> MPoly<R> {
        let n = self.nvars.max(rhs.nvars);
        let mut out = MPoly::zero(n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = (0..n).map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0)).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Ring> Mul for MPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for MPoly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, then lexicographically by exponent.
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    let name = VARIABLES.get(j).map(|c| c.to_string()).unwrap_or_else(|| format!("x{j}"));
                    if k == 1 { name } else { format!("{name}^{k}") }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at offset {offset}: {message}")]
pub struct ParsePolyError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Op(char),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

type Q = MPoly<BigRational>;

impl Parser {
    fn err(&self, message: impl Into<String>) -> ParsePolyError {
        let offset = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end);
        ParsePolyError { offset, message: message.into() }
    }

    fn peek_op(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some((_, Tok::Op(o))) if *o == c)
    }

    fn expr(&mut self) -> Result<Q, ParsePolyError> {
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

    fn term(&mut self) -> Result<Q, ParsePolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.peek_op('*') {
                self.pos += 1;
                acc = &acc * &self.unary()?;
            } else if self.peek_op('/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.unary()?;
                let c = match d.as_monomial() {
                    Some((c, e)) if e.iter().all(|&k| k == 0) => c,
                    _ if d.is_zero() => {
                        self.pos = at;
                        return Err(self.err("division by zero"));
                    }
                    _ => {
                        self.pos = at;
                        return Err(self.err("division by a non-constant"));
                    }
                };
                acc = acc.scale(&(BigRational::one() / c));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Q, ParsePolyError> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Q, ParsePolyError> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.toks.get(self.pos) {
            Some((_, Tok::Int(n))) => {
                let k = u32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(k))
            }
            _ => Err(self.err("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Q, ParsePolyError> {
        match self.toks.get(self.pos).cloned() {
            Some((_, Tok::Int(n))) => {
                self.pos += 1;
                Ok(MPoly::constant(BigRational::from_integer(n), 0))
            }
            Some((_, Tok::Var(i))) => {
                self.pos += 1;
                Ok(MPoly::var(i, i + 1))
            }
            Some((_, Tok::Op('('))) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, a variable or `(`")),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParsePolyError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (off, ch) = bytes[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                i += 1;
            }
            let lit: String = bytes[start..i].iter().map(|&(_, c)| c).collect();
            out.push((off, Tok::Int(lit.parse().expect("digits"))));
        } else if let Some(v) = VARIABLES.iter().position(|&c| c == ch) {
            out.push((off, Tok::Var(v)));
            i += 1;
        } else if "+-*/^()".contains(ch) {
            out.push((off, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(ParsePolyError { offset: off, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

/// Parses an input polynomial. The number of variables is one more than the
/// index of the last variable that occurs (at least one).
pub fn parse_polynomial(s: &str) -> Result<MPoly<BigRational>, ParsePolyError> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(ParsePolyError { offset: 0, message: "empty polynomial".into() });
    }
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input (use `*` for products)"));
    }
    let n = e.nvars().max(1);
    Ok(e.with_nvars(n))
}

impl std::str::FromStr for MPoly<BigRational> {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}

// ---------------------------------------------------------------------------
// Bivariate algebra over Q, viewing f(x, y) as a polynomial in y over Q[x].

/// Polynomial in `y` whose coefficients are polynomials in `x`.
pub type YPoly = Poly<QPoly>;

pub fn to_ypoly(f: &MPoly<BigRational>) -> YPoly {
    assert_eq!(f.nvars(), 2, "bivariate polynomial expected");
    let deg_y = f.terms().map(|(e, _)| e[1] as usize).max().unwrap_or(0);
    let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); deg_y + 1];
    for (e, c) in f.terms() {
        let row = &mut rows[e[1] as usize];
        if row.len() <= e[0] as usize {
            row.resize(e[0] as usize + 1, BigRational::zero());
        }
        row[e[0] as usize] = c.clone();
    }
    Poly::new(rows.into_iter().map(Poly::new).collect())
}

pub fn from_ypoly(p: &YPoly) -> MPoly<BigRational> {
    let mut terms = Vec::new();
    for (j, cx) in p.coeffs().iter().enumerate() {
        for (i, c) in cx.coeffs().iter().enumerate() {
            terms.push((vec![i as u32, j as u32], c.clone()));
        }
    }
    MPoly::from_terms(2, terms)
}

fn content(p: &YPoly) -> QPoly {
    p.coeffs().iter().fold(QPoly::zero(), |g, c| g.gcd(c))
}

fn primitive_part(p: &YPoly) -> YPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p);
    p.map(|a| a.div_exact(&c).expect("content divides"))
}

fn d_dy(p: &YPoly) -> YPoly {
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&BigRational::from_integer(BigInt::from(i))))
            .collect(),
    )
}

/// Exact quotient in `Q[x][y]`, or `None` when the division is not exact.
pub fn ypoly_div_exact(a: &YPoly, b: &YPoly) -> Option<YPoly> {
    let db = b.degree().expect("division by zero");
    let lb = b.lead().expect("nonzero").clone();
    let mut rem = a.clone();
    let mut quot: Vec<QPoly> = vec![QPoly::zero(); a.degree().map_or(0, |d| d + 1)];
    while let Some(dr) = rem.degree() {
        if dr < db {
            return None;
        }
        let q = rem.lead().expect("nonzero").div_exact(&lb)?;
        rem = rem - b.map(|c| c.clone() * q.clone()).shift(dr - db);
        quot[dr - db] = q;
    }
    Some(Poly::new(quot))
}

/// Greatest common divisor in `Q[x][y]`, normalized so the leading
/// coefficient of the leading `x`-polynomial is 1.
pub fn ypoly_gcd(a: &YPoly, b: &YPoly) -> YPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let c = content(a).gcd(&content(b));
    let (mut u, mut v) = (primitive_part(a), primitive_part(b));
    if u.degree() < v.degree() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_zero() {
        let r = u.pseudo_rem(&v);
        u = v;
        v = primitive_part(&r);
    }
    normalize(&u.map(|x| x.clone() * c.clone()))
}

fn normalize(p: &YPoly) -> YPoly {
    match p.lead().and_then(|l| l.lead()) {
        Some(l) => {
            let inv = QPoly::constant(BigRational::one() / l.clone());
            p.map(|c| c.clone() * inv.clone())
        }
        None => p.clone(),
    }
}

/// Square-free decomposition of a nonzero bivariate polynomial:
/// `f = c * prod g_k^k` with the `g_k` square-free, pairwise coprime and
/// nonconstant. Returns the `(g_k, k)` pairs.
pub fn squarefree_factors(f: &MPoly<BigRational>) -> Vec<(MPoly<BigRational>, u32)> {
    let yp = to_ypoly(f);
    let cont = content(&yp);
    let prim = primitive_part(&yp);
    let mut by_mult: BTreeMap<u32, YPoly> = BTreeMap::new();
    let mut push = |k: u32, g: YPoly| {
        if g.degree() == Some(0) && g.coeff(0).degree().unwrap_or(0) == 0 {
            return;
        }
        let e = by_mult.entry(k).or_insert_with(YPoly::one);
        *e = &*e * &g;
    };
    // Part depending on y: Yun's algorithm with respect to y.
    if prim.degree().unwrap_or(0) > 0 {
        let dp = d_dy(&prim);
        let a = ypoly_gcd(&prim, &dp);
        let mut b = ypoly_div_exact(&prim, &a).expect("gcd divides");
        let mut c = ypoly_div_exact(&dp, &a).expect("gcd divides");
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let d = c - d_dy(&b);
            let g = ypoly_gcd(&b, &d);
            b = ypoly_div_exact(&b, &g).expect("gcd divides");
            c = ypoly_div_exact(&d, &g).expect("gcd divides");
            push(k, g);
            k += 1;
        }
    }
    // Content in x alone.
    if cont.degree().unwrap_or(0) > 0 {
        let (_, parts) = cont.squarefree_decomposition();
        for (i, p) in parts.into_iter().enumerate() {
            push(i as u32 + 1, Poly::constant(p));
        }
    }
    by_mult.into_iter().map(|(k, g)| (from_ypoly(&normalize(&g)), k)).collect()
}

/// Translates a bivariate polynomial: `f(x + a, y + b)`.
pub fn translate(f: &MPoly<BigRational>, a: &BigRational, b: &BigRational) -> MPoly<BigRational> {
    let x = MPoly::var(0, 2) + MPoly::constant(a.clone(), 2);
    let y = MPoly::var(1, 2) + MPoly::constant(b.clone(), 2);
    f.substitute(&[x, y])
}
