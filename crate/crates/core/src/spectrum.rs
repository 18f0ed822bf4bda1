//! Finitely supported integer-valued functions on the rationals, written as
//! fractional-exponent polynomials `sum n_a t^a`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bigint_serde::JsonInt;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumPoly {
    terms: BTreeMap<BigRational, BigInt>,
}

impl SpectrumPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (BigRational, BigInt)>>(pairs: I) -> Self {
        let mut out = Self::new();
        for (a, n) in pairs {
            out.add_term(a, n);
        }
        out
    }

    /// The integer-exponent polynomial `sum_p n_p t^p`.
    pub fn from_integer_exponents(map: &BTreeMap<i64, BigInt>) -> Self {
        Self::from_pairs(map.iter().map(|(&p, n)| (BigRational::from_integer(p.into()), n.clone())))
    }

    pub fn add_term(&mut self, exponent: BigRational, n: BigInt) {
        if n.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(BigInt::zero);
        *entry += n;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, exponent: &BigRational) -> BigInt {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    /// Sorted `(exponent, multiplicity)` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (&BigRational, &BigInt)> {
        self.terms.iter()
    }

    /// Multiplication by `t^a`.
    pub fn shift(&self, a: &BigRational) -> Self {
        SpectrumPoly { terms: self.terms.iter().map(|(e, n)| (e + a, n.clone())).collect() }
    }

    /// The involution `t^a -> t^{-a}`.
    pub fn iota(&self) -> Self {
        SpectrumPoly { terms: self.terms.iter().map(|(e, n)| (-e, n.clone())).collect() }
    }

    /// Adds `c * t^0`.
    pub fn add_constant(&self, c: &BigInt) -> Self {
        let mut out = self.clone();
        out.add_term(BigRational::zero(), c.clone());
        out
    }
}

impl Add for SpectrumPoly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, n) in rhs.terms {
            self.add_term(e, n);
        }
        self
    }
}

impl Neg for SpectrumPoly {
    type Output = Self;
    fn neg(self) -> Self {
        SpectrumPoly { terms: self.terms.into_iter().map(|(e, n)| (e, -n)).collect() }
    }
}

impl Sub for SpectrumPoly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for SpectrumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, n)) in self.terms.iter().enumerate() {
            match (i, n.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = n.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "t^({e})")?;
        }
        Ok(())
    }
}

/// JSON form: sorted `["exponent", multiplicity]` pairs with the exponent as
/// a reduced fraction string.
impl Serialize for SpectrumPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(String, JsonInt)> = self.terms.iter().map(|(e, n)| (e.to_string(), JsonInt(n.clone()))).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SpectrumPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(String, JsonInt)> = Vec::deserialize(deserializer)?;
        let mut out = SpectrumPoly::new();
        for (e, n) in pairs {
            let e: BigRational = e.parse().map_err(|_| serde::de::Error::custom(format!("bad exponent `{e}`")))?;
            out.add_term(e, n.0);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn zero_multiplicities_vanish() {
        let mut s = SpectrumPoly::new();
        s.add_term(r(1, 2), 3.into());
        s.add_term(r(2, 4), (-3).into());
        assert!(s.is_empty());
    }

    #[test]
    fn iota_and_shift() {
        let s = SpectrumPoly::from_pairs([(r(1, 6), BigInt::from(1)), (r(11, 6), BigInt::from(1))]);
        let t = s.iota().shift(&r(2, 1));
        assert_eq!(t, SpectrumPoly::from_pairs([(r(1, 6), BigInt::from(1)), (r(11, 6), BigInt::from(1))]));
        assert_eq!(t.to_string(), "t^(1/6) + t^(11/6)");
    }

    #[test]
    fn json_round_trip() {
        let s = SpectrumPoly::from_pairs([(r(7, 10), BigInt::from(1)), (r(-1, 3), BigInt::from(-2))]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"[["-1/3",-2],["7/10",1]]"#);
        assert_eq!(serde_json::from_str::<SpectrumPoly>(&j).unwrap(), s);
    }
}
