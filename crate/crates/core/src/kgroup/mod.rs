//! Realized Grothendieck ring of motives.
//!
//! A class is recorded by its virtual Hodge polynomial: an integer Laurent
//! polynomial in two variables `u`, `v` where the monomial `u^p v^q` stands for
//! one Hodge type `(p, q)`. The Lefschetz class is `L = uv`, a point is `1`
//! and affine `m`-space is `L^m`.

mod character;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bigint_serde::JsonInt;
use crate::scalar::Ring;

pub use character::{Character, CharacterError};
pub use text::ParseClassError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KGroupError {
    /// The class has a term `u^p v^q` with `p != q`, so its point counts are
    /// not a Laurent polynomial in `q`.
    #[error("class is not of Tate type: term u^{p} v^{q}")]
    NotTate { p: i64, q: i64 },
}

/// Laurent polynomial in `u`, `v` with coefficients in `C`.
///
/// Terms are kept in a `BTreeMap` keyed by `(p, q)`, so iteration order is
/// lexicographic and no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct HodgePoly<C> {
    terms: BTreeMap<(i64, i64), C>,
}

impl<C: Ring> HodgePoly<C> {
    /// Builds a class from `(p, q, coefficient)` triples; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn monomial(c: C, p: i64, q: i64) -> Self {
        Self::from_terms([((p, q), c)])
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `L^k = (uv)^k` for any integer `k`.
    pub fn lefschetz_pow(k: i64) -> Self {
        Self::monomial(C::one(), k, k)
    }

    pub fn lefschetz() -> Self {
        Self::lefschetz_pow(1)
    }

    /// `u`, a Hodge type `(1, 0)` piece.
    pub fn u() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    /// `v`, a Hodge type `(0, 1)` piece.
    pub fn v() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: i64, q: i64) -> C {
        self.terms.get(&(p, q)).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, e: (i64, i64), c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, a)| (*e, a.clone() * c.clone())))
    }

    /// Multiplies by the unit monomial `u^p v^q`.
    pub fn shift(&self, p: i64, q: i64) -> Self {
        HodgePoly { terms: self.terms.iter().map(|(&(a, b), c)| ((a + p, b + q), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The duality involution `u -> 1/u`, `v -> 1/v`.
    pub fn dual(&self) -> Self {
        HodgePoly { terms: self.terms.iter().map(|(&(p, q), c)| ((-p, -q), c.clone())).collect() }
    }

    /// Topological Euler characteristic: evaluation at `u = v = 1`.
    pub fn chi_top(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Hodge-filtration polynomial: evaluation at `u = t`, `v = 1`, returned as
    /// the map `p -> sum_q coeff(p, q)` with zero entries dropped.
    pub fn hsp_eval(&self) -> BTreeMap<i64, C> {
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        for (&(p, _), c) in &self.terms {
            let e = out.entry(p).or_insert_with(C::zero);
            *e = e.clone() + c.clone();
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// True if every term has `p == q`, i.e. the class is a Laurent
    /// polynomial in `L`.
    pub fn is_tate(&self) -> bool {
        self.terms.keys().all(|&(p, q)| p == q)
    }

    /// Coefficients of the class as a Laurent polynomial in `L`, keyed by the
    /// exponent of `L`.
    pub fn tate_coeffs(&self) -> Result<BTreeMap<i64, C>, KGroupError> {
        self.terms
            .iter()
            .map(|(&(p, q), c)| if p == q { Ok((p, c.clone())) } else { Err(KGroupError::NotTate { p, q }) })
            .collect()
    }

    /// Units of the Laurent ring are `±u^p v^q`; returns the inverse of such a
    /// monomial when `C` has `c^-1 = c` (the integers), otherwise `None`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(p, q), c) = self.terms.iter().next()?;
        let c2 = c.clone() * c.clone();
        c2.is_one().then(|| Self::monomial(c.clone(), -p, -q))
    }

    /// Componentwise minimum and maximum exponents; `((0, 0), (0, 0))` for zero.
    pub fn exponent_box(&self) -> ((i64, i64), (i64, i64)) {
        let mut it = self.terms.keys();
        let Some(&first) = it.next() else { return ((0, 0), (0, 0)) };
        it.fold((first, first), |(lo, hi), &(p, q)| ((lo.0.min(p), lo.1.min(q)), (hi.0.max(p), hi.1.max(q))))
    }

    /// Largest term in lexicographic order on `(p, q)`.
    pub fn leading_term(&self) -> Option<((i64, i64), &C)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn trailing_term(&self) -> Option<((i64, i64), &C)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }
}

impl HodgePoly<BigInt> {
    /// Evaluates a Tate class at `L = q`.
    pub fn tate_eval(&self, q: &BigRational) -> Result<BigRational, KGroupError> {
        let mut acc = BigRational::zero();
        for (k, c) in self.tate_coeffs()? {
            let pw = if k >= 0 { q.pow(k as i32) } else { q.recip().pow((-k) as i32) };
            acc += pw * BigRational::from_integer(c);
        }
        Ok(acc)
    }

    /// Exact division in `Z[u, u^-1, v, v^-1]`; `None` if the quotient does not
    /// exist.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let ((dp, dq), dl) = divisor.leading_term()?;
        let dl = dl.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        // each coordinate of a quotient exponent is confined to a box fixed by
        // the extreme exponents of dividend and divisor
        let (alo, ahi) = self.exponent_box();
        let (dlo, dhi) = divisor.exponent_box();
        let lo = (alo.0 - dlo.0, alo.1 - dlo.1);
        let hi = (ahi.0 - dhi.0, ahi.1 - dhi.1);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((rp, rq), rc)) = rem.leading_term() {
            let e = (rp - dp, rq - dq);
            if e.0 < lo.0 || e.0 > hi.0 || e.1 < lo.1 || e.1 > hi.1 {
                return None;
            }
            let (qc, r) = rc.div_rem(&dl);
            if !r.is_zero() {
                return None;
            }
            let step = Self::monomial(qc, e.0, e.1);
            rem = rem - &step * divisor;
            quot = quot + step;
        }
        Some(quot)
    }

    /// Largest absolute coefficient, handy for bounding random tests.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl<C: Ring> Zero for HodgePoly<C> {
    fn zero() -> Self {
        HodgePoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for HodgePoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Add for HodgePoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<C: Ring> Sub for HodgePoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
        self
    }
}

impl<C: Ring> Neg for HodgePoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        HodgePoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Ring> Mul for &HodgePoly<C> {
    type Output = HodgePoly<C>;
    fn mul(self, rhs: Self) -> HodgePoly<C> {
        let mut out = HodgePoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<C: Ring> Mul for HodgePoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Ring> From<C> for HodgePoly<C> {
    fn from(c: C) -> Self {
        Self::constant(c)
    }
}

/// JSON form: an array of `[p, q, coefficient]` triples in increasing order.
impl Serialize for HodgePoly<BigInt> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(i64, i64, JsonInt)> =
            self.terms.iter().map(|(&(p, q), c)| (p, q, JsonInt(c.clone()))).collect();
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HodgePoly<BigInt> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let triples: Vec<(i64, i64, JsonInt)> = Vec::deserialize(deserializer)?;
        Ok(Self::from_terms(triples.into_iter().map(|(p, q, c)| ((p, q), c.0))))
    }
}

/// Class of the projective line, `L + 1`.
pub fn class_p1() -> crate::EPoly {
    crate::EPoly::lefschetz() + crate::EPoly::one()
}

/// Class of the multiplicative group, `L - 1`.
pub fn class_gm() -> crate::EPoly {
    crate::EPoly::lefschetz() - crate::EPoly::one()
}

/// Integer constant as a class.
pub fn int(n: i64) -> crate::EPoly {
    crate::EPoly::constant(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EPoly;

    fn l() -> EPoly {
        EPoly::lefschetz()
    }

    #[test]
    fn lefschetz_products() {
        assert_eq!(l() * l(), EPoly::lefschetz_pow(2));
        assert_eq!((l() - int(1)) + int(1), l());
        let p1 = class_p1();
        assert_eq!(&p1 * &p1, EPoly::lefschetz_pow(2) + int(2) * l() + int(1));
    }

    #[test]
    fn duality_examples() {
        assert_eq!(l().dual(), EPoly::lefschetz_pow(-1));
        // h(P^1)^dual = h(P^1) L^-1
        assert_eq!(class_p1().dual(), EPoly::lefschetz_pow(-1) * class_p1());
        assert_eq!(class_gm().dual(), -(EPoly::lefschetz_pow(-1) * class_gm()));
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(l().chi_top(), BigInt::from(1));
        assert_eq!((l() - int(2)).chi_top(), BigInt::from(-1));
        assert_eq!(EPoly::zero().chi_top(), BigInt::from(0));
    }

    #[test]
    fn tate_evaluation() {
        let three = BigRational::from_integer(3.into());
        assert_eq!(class_gm().tate_eval(&three).unwrap(), BigRational::from_integer(2.into()));
        let a = EPoly::lefschetz_pow(2) + int(2) * l() + int(1);
        assert_eq!(a.tate_eval(&BigRational::from_integer(5.into())).unwrap(), BigRational::from_integer(36.into()));
        let mixed = EPoly::u() + EPoly::v();
        assert!(matches!(mixed.tate_eval(&three), Err(KGroupError::NotTate { .. })));
    }

    #[test]
    fn hodge_filtration_polynomial() {
        assert_eq!(int(1).hsp_eval(), BTreeMap::from([(0, BigInt::from(1))]));
        assert_eq!(l().hsp_eval(), BTreeMap::from([(1, BigInt::from(1))]));
        let a = -(int(2) * EPoly::u() + int(3) * EPoly::v());
        assert_eq!(a.hsp_eval(), BTreeMap::from([(0, BigInt::from(-3)), (1, BigInt::from(-2))]));
    }

    #[test]
    fn exact_division_by_one_minus_l() {
        let one_minus_l = int(1) - l();
        let a = &(EPoly::lefschetz_pow(-3) + EPoly::u()) * &one_minus_l;
        assert_eq!(a.div_exact(&one_minus_l), Some(EPoly::lefschetz_pow(-3) + EPoly::u()));
        assert_eq!(l().div_exact(&one_minus_l), None);
        assert_eq!(int(2).div_exact(&int(3)), None);
    }

    #[test]
    fn machine_integer_coefficients() {
        let a: HodgePoly<i64> = HodgePoly::lefschetz() - HodgePoly::one();
        assert_eq!((&a * &a).chi_top(), 0);
        assert_eq!(a.dual().dual(), a);
    }
}
