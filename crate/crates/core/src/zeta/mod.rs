//! The localized power-series ring in `S = L^{-s}`.
//!
//! A [`ZetaFn`] is a numerator polynomial in `S` with class coefficients over
//! a multiset of gate factors `1 - L^{-n} S^N`. Every operation returns a value
//! in canonical form: gates are sorted and no gate divides the numerator.

mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{EPoly, SPoly};

pub use text::ZetaJson;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    /// After dualizing, a negative power of `S` survives: the input lies
    /// outside the localized power-series ring.
    #[error("dual has a residual negative power S^-{0}")]
    NotDualizable(usize),
    /// The numerator outgrows the gates, so the value has no limit as
    /// `s -> -infinity`.
    #[error("value is outside the constant-term domain: numerator degree {numerator} exceeds gate degree {gates}")]
    NotInCtDomain { numerator: usize, gates: usize },
    #[error("invalid gate ({0}, {1}): both entries must be positive")]
    InvalidGate(u64, u64),
}

/// The factor `1 - L^{-n} S^N`, i.e. `1 - L^{-Ns-n}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Gate {
    /// Power of `S` (the `N` of a divisor).
    pub s_degree: u64,
    /// Power of `L^{-1}` (the `n`, or `nu`, of a divisor).
    pub l_weight: u64,
}

impl Gate {
    pub fn new(s_degree: u64, l_weight: u64) -> Result<Self, ZetaError> {
        if s_degree == 0 || l_weight == 0 {
            return Err(ZetaError::InvalidGate(s_degree, l_weight));
        }
        Ok(Gate { s_degree, l_weight })
    }

    /// `L^{-n} S^N` as a polynomial in `S`.
    pub fn series_term(&self) -> SPoly {
        SPoly::monomial(EPoly::lefschetz_pow(-(self.l_weight as i64)), self.s_degree as usize)
    }

    /// `1 - L^{-n} S^N` as a polynomial in `S`.
    pub fn polynomial(&self) -> SPoly {
        SPoly::one() - self.series_term()
    }

    /// Inverse of the leading coefficient `-L^{-n}`.
    fn lead_inverse(&self) -> EPoly {
        -EPoly::lefschetz_pow(self.l_weight as i64)
    }
}

/// An element of the localized ring, `numerator / prod(gates)`.
#[derive(Clone, Debug)]
pub struct ZetaFn {
    numerator: SPoly,
    gates: Vec<Gate>,
}

fn gate_product(gates: &[Gate]) -> SPoly {
    gates.iter().fold(SPoly::one(), |acc, g| &acc * &g.polynomial())
}

/// Multiset difference `a - b` of sorted gate lists.
fn multiset_minus(a: &[Gate], b: &[Gate]) -> Vec<Gate> {
    let mut counts: BTreeMap<Gate, usize> = BTreeMap::new();
    for g in b {
        *counts.entry(*g).or_default() += 1;
    }
    let mut out = Vec::new();
    for g in a {
        match counts.get_mut(g) {
            Some(c) if *c > 0 => *c -= 1,
            _ => out.push(*g),
        }
    }
    out
}

/// Multiset maximum of sorted gate lists.
fn multiset_lcm(a: &[Gate], b: &[Gate]) -> Vec<Gate> {
    let mut out = a.to_vec();
    out.extend(multiset_minus(b, a));
    out.sort();
    out
}

impl ZetaFn {
    /// Builds `numerator / prod(gates)` and brings it to canonical form.
    pub fn new(numerator: SPoly, mut gates: Vec<Gate>) -> Self {
        gates.sort();
        let mut z = ZetaFn { numerator, gates };
        z.normalize();
        z
    }

    pub fn constant(c: EPoly) -> Self {
        Self::new(SPoly::constant(c), Vec::new())
    }

    /// `c S^k`.
    pub fn monomial(c: EPoly, k: usize) -> Self {
        Self::new(SPoly::monomial(c, k), Vec::new())
    }

    /// `S^k = L^{-ks}`.
    pub fn s_power(k: usize) -> Self {
        Self::monomial(EPoly::one(), k)
    }

    /// `(1 - L^{-Ns-n})^{-1}`.
    pub fn gate_inverse(g: Gate) -> Self {
        Self::new(SPoly::one(), vec![g])
    }

    /// `L^{-Ns-n} (1 - L^{-Ns-n})^{-1}`, the series CT sends to `-1`.
    pub fn gate_series(g: Gate) -> Self {
        Self::new(g.series_term(), vec![g])
    }

    pub fn numerator(&self) -> &SPoly {
        &self.numerator
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Total `S`-degree of the gate product.
    pub fn gate_degree(&self) -> usize {
        self.gates.iter().map(|g| g.s_degree as usize).sum()
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.gates.clear();
            return;
        }
        let mut i = 0;
        while i < self.gates.len() {
            let g = self.gates[i];
            let (q, r) = self.numerator.div_rem_unit(&g.polynomial(), &g.lead_inverse());
            if r.is_zero() {
                self.numerator = q;
                self.gates.remove(i);
            } else {
                i += 1;
            }
        }
    }

    /// Applies `f` to every class coefficient of the numerator.
    pub fn map_coeffs(&self, f: impl Fn(&EPoly) -> EPoly) -> Self {
        Self::new(self.numerator.map(f), self.gates.clone())
    }

    /// The duality involution: classes are dualized, `S -> S^{-1}`, and each
    /// gate inverse goes to `-L^{-n} S^N` times itself.
    pub fn dual(&self) -> Result<Self, ZetaError> {
        if self.numerator.is_zero() {
            return Ok(Self::zero());
        }
        let deg = self.numerator.degree().expect("nonzero");
        let total = self.gate_degree();
        if deg > total {
            return Err(ZetaError::NotDualizable(deg - total));
        }
        let sign_weight: EPoly = self
            .gates
            .iter()
            .fold(EPoly::one(), |acc, g| &acc * &(-EPoly::lefschetz_pow(-(g.l_weight as i64))));
        let mut coeffs = vec![EPoly::zero(); total + 1];
        for (a, c) in self.numerator.coeffs().iter().enumerate() {
            coeffs[total - a] = &c.dual() * &sign_weight;
        }
        Ok(Self::new(SPoly::new(coeffs), self.gates.clone()))
    }

    /// Constant term as `S -> infinity`: each gate series `L^{-n}S^N/(1-L^{-n}S^N)`
    /// goes to `-1` and classes pass through unchanged.
    pub fn ct(&self) -> Result<EPoly, ZetaError> {
        if self.numerator.is_zero() {
            return Ok(EPoly::zero());
        }
        let deg = self.numerator.degree().expect("nonzero");
        let total = self.gate_degree();
        if deg > total {
            return Err(ZetaError::NotInCtDomain { numerator: deg, gates: total });
        }
        if deg < total {
            return Ok(EPoly::zero());
        }
        // leading coefficient of prod(1 - L^{-n}S^N) is prod(-L^{-n}), a unit
        let sign = if self.gates.len() % 2 == 0 { EPoly::one() } else { -EPoly::one() };
        let weight: i64 = self.gates.iter().map(|g| g.l_weight as i64).sum();
        let lead = self.numerator.lead().expect("nonzero");
        Ok(&(lead * &sign) * &EPoly::lefschetz_pow(weight))
    }

    /// Power-series coefficients of `S^0 .. S^{n_max}`.
    pub fn expand_series(&self, n_max: usize) -> Vec<EPoly> {
        let len = n_max + 1;
        let mut acc = self.numerator.truncate(len);
        for g in &self.gates {
            // multiply by sum_i L^{-n i} S^{N i}
            let mut terms = vec![EPoly::zero(); len];
            let step = g.s_degree as usize;
            let mut i = 0usize;
            while i * step < len {
                terms[i * step] = EPoly::lefschetz_pow(-(g.l_weight as i64) * i as i64);
                i += 1;
            }
            acc = (&acc * &SPoly::new(terms)).truncate(len);
        }
        (0..len).map(|i| acc.coeff(i)).collect()
    }

    /// Substitutes `s = d` (`S = L^{-d}`), giving an unreduced fraction of
    /// classes.
    pub fn eval_integer_s(&self, d: u64) -> EPolyFraction {
        let sd = EPoly::lefschetz_pow(-(d as i64));
        let numerator = self.numerator.eval(&sd);
        let denominator = self.gates.iter().fold(EPoly::one(), |acc, g| {
            let e = (g.s_degree * d + g.l_weight) as i64;
            &acc * &(EPoly::one() - EPoly::lefschetz_pow(-e))
        });
        EPolyFraction { numerator, denominator }
    }

    /// True if every numerator coefficient is a Laurent polynomial in `L`.
    pub fn is_tate(&self) -> bool {
        self.numerator.coeffs().iter().all(EPoly::is_tate)
    }
}

impl PartialEq for ZetaFn {
    fn eq(&self, other: &Self) -> bool {
        let mine = multiset_minus(&self.gates, &other.gates);
        let theirs = multiset_minus(&other.gates, &self.gates);
        &self.numerator * &gate_product(&theirs) == &other.numerator * &gate_product(&mine)
    }
}

impl Zero for ZetaFn {
    fn zero() -> Self {
        ZetaFn { numerator: SPoly::zero(), gates: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl One for ZetaFn {
    fn one() -> Self {
        Self::constant(EPoly::one())
    }
}

impl Add for ZetaFn {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let lcm = multiset_lcm(&self.gates, &rhs.gates);
        let a = &self.numerator * &gate_product(&multiset_minus(&lcm, &self.gates));
        let b = &rhs.numerator * &gate_product(&multiset_minus(&lcm, &rhs.gates));
        ZetaFn::new(a + b, lcm)
    }
}

impl Neg for ZetaFn {
    type Output = Self;
    fn neg(self) -> Self {
        ZetaFn { numerator: -self.numerator, gates: self.gates }
    }
}

impl Sub for ZetaFn {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for &ZetaFn {
    type Output = ZetaFn;
    fn mul(self, rhs: Self) -> ZetaFn {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&rhs.gates);
        ZetaFn::new(&self.numerator * &rhs.numerator, gates)
    }
}

impl Mul for ZetaFn {
    type Output = ZetaFn;
    fn mul(self, rhs: Self) -> ZetaFn {
        &self * &rhs
    }
}

impl From<EPoly> for ZetaFn {
    fn from(c: EPoly) -> Self {
        Self::constant(c)
    }
}

/// A fraction of classes, compared by cross-multiplication.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EPolyFraction {
    pub numerator: EPoly,
    pub denominator: EPoly,
}

impl PartialEq for EPolyFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}
