use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("character denominator must be positive")]
    ZeroDenominator,
    #[error("cannot parse character `{0}`: expected j/d")]
    Syntax(String),
}

/// A finite-order character, stored as the reduced fraction `j/d` in `[0, 1)`
/// that it occupies in `Q/Z`. The order of the character is `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Character {
    num: u64,
    den: u64,
}

impl Character {
    /// The class of `j/d` in `Q/Z`, reduced.
    pub fn new(j: i64, d: u64) -> Result<Self, CharacterError> {
        if d == 0 {
            return Err(CharacterError::ZeroDenominator);
        }
        let j = j.rem_euclid(d as i64) as u64;
        let g = j.gcd(&d);
        Ok(Character { num: j / g, den: d / g })
    }

    pub fn trivial() -> Self {
        Character { num: 0, den: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.num == 0
    }

    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    /// The representative `gamma(alpha) = j/d` in `[0, 1)`.
    pub fn gamma(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn inverse(&self) -> Self {
        Character::new(-(self.num as i64), self.den).expect("positive denominator")
    }

    /// Fractional part of `e * gamma(alpha)`, as a numerator over `order()`.
    pub fn scaled_residue(&self, e: i64) -> u64 {
        (e as i128 * self.num as i128).rem_euclid(self.den as i128) as u64
    }

    /// Every character whose order divides `d`, in increasing `gamma`.
    pub fn all_dividing(d: u64) -> Vec<Character> {
        let mut out: Vec<_> = (0..d as i64).map(|j| Character::new(j, d).expect("d > 0")).collect();
        out.sort_by_key(|c| (c.num as u128 * d as u128) / c.den as u128);
        out
    }

    /// Characters of exact order `d`.
    pub fn of_order(d: u64) -> Vec<Character> {
        Self::all_dividing(d).into_iter().filter(|c| c.den == d).collect()
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Character {
    type Err = CharacterError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (j, d) = match s.split_once('/') {
            Some((j, d)) => (j.trim(), d.trim()),
            None => (s, "1"),
        };
        let j: i64 = j.parse().map_err(|_| CharacterError::Syntax(s.to_string()))?;
        let d: u64 = d.parse().map_err(|_| CharacterError::Syntax(s.to_string()))?;
        Character::new(j, d)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
