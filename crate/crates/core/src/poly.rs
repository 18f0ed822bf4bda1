//! Dense univariate polynomials over a generic coefficient ring.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::scalar::{Field, Ring};

/// A univariate polynomial `c_0 + c_1 X + ... + c_n X^n`.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and `degree` is well defined for every nonzero value.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c X^deg`.
    pub fn monomial(c: R, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn lead(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation at a point of any ring the coefficients embed into.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Truncates to the coefficients of `X^0 .. X^(n-1)`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Long division by a divisor whose leading coefficient has the supplied
    /// inverse. Works over any ring as long as the leading coefficient is a
    /// unit.
    pub fn div_rem_unit(&self, divisor: &Self, lead_inv: &R) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![R::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            let q = c * lead_inv.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = rem[i - dd + j].clone() - q.clone() * dc.clone();
                rem[i - dd + j] = t;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Pseudo-remainder: `lead(d)^k * self mod d` computed without division.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.lead().cloned().expect("nonzero");
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let rl = rem.lead().cloned().expect("nonzero");
            rem = rem.scale(&lc) - divisor.scale(&rl).shift(rd - dd);
        }
        rem
    }
}

impl<R: Ring + FromPrimitive> Poly<R> {
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_usize(i).expect("small integer"))
                .collect(),
        )
    }
}

impl<F: Field> Poly<F> {
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor.lead().cloned().expect("division by zero polynomial");
        self.div_rem_unit(divisor, &(F::one() / lead))
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&(F::one() / l.clone())),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }
}

impl<F: Field + FromPrimitive> Poly<F> {
    /// Yun's square-free decomposition: returns `(c, [a_1, a_2, ...])` with
    /// `self = c * a_1 * a_2^2 * ...`, each `a_i` monic and square-free.
    pub fn squarefree_decomposition(&self) -> (F, Vec<Self>) {
        let lead = self.lead().cloned().unwrap_or_else(F::zero);
        if self.degree().unwrap_or(0) == 0 {
            return (lead, Vec::new());
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = df.div_exact(&a).expect("gcd divides");
        let mut parts = Vec::new();
        loop {
            let d = c - b.derivative();
            if b.degree() == Some(0) {
                break;
            }
            let g = b.gcd(&d);
            let next_b = b.div_exact(&g).expect("gcd divides");
            c = d.div_exact(&g).expect("gcd divides");
            parts.push(g);
            b = next_b;
        }
        while parts.last().is_some_and(|p| p.degree() == Some(0)) {
            parts.pop();
        }
        (lead, parts)
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly { coeffs: vec![R::one()] }
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = out[i + j].clone() + a.clone() * b.clone();
                out[i + j] = t;
            }
        }
        Poly::new(out)
    }
}

impl Poly<BigRational> {
    /// The distinct rational roots, in increasing order.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let Some(low) = self.low_degree() else {
            return Vec::new();
        };
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(BigRational::zero());
        }
        let p = Poly::new(self.coeffs[low..].to_vec());
        if p.degree().unwrap_or(0) > 0 {
            let den = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            let ints: Vec<BigInt> = p.coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonzero").abs();
            for num in divisors(&a0) {
                for den in divisors(&an) {
                    for sign in [1, -1] {
                        let r = BigRational::new(BigInt::from(sign) * num.clone(), den.clone());
                        if *r.denom() == den && r.numer().abs() == num && p.eval(&r).is_zero() && !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

/// Positive divisors of a nonzero integer, by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
