//! The topological zeta function: a rational function in `s` whose
//! denominator is a product of linear factors `N s + nu`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::kgroup::Character;
use crate::strata::{RegionSpec, ResolutionData};
use crate::QPoly;

/// `numerator(s) / prod (N s + nu)`, with every factor primitive
/// (`gcd(N, nu) = 1`) and none dividing the numerator.
#[derive(Clone, Debug)]
pub struct TopoZeta {
    numerator: QPoly,
    denominator: Vec<(u64, u64)>,
}

fn linear(n: u64, nu: u64) -> QPoly {
    QPoly::new(vec![BigRational::from_integer(nu.into()), BigRational::from_integer(n.into())])
}

fn product(factors: &[(u64, u64)]) -> QPoly {
    factors.iter().fold(QPoly::one(), |acc, &(n, nu)| &acc * &linear(n, nu))
}

fn minus(a: &[(u64, u64)], b: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut out = a.to_vec();
    for x in b {
        if let Some(p) = out.iter().position(|y| y == x) {
            out.remove(p);
        }
    }
    out
}

impl TopoZeta {
    /// `numerator / prod (N_i s + nu_i)`; factors are made primitive and
    /// common factors cancelled.
    pub fn new(numerator: QPoly, factors: &[(u64, u64)]) -> Self {
        let mut numerator = numerator;
        let mut denominator = Vec::with_capacity(factors.len());
        for &(n, nu) in factors {
            assert!(n > 0 && nu > 0, "linear factors need positive data");
            let g = n.gcd(&nu);
            numerator = numerator.scale(&BigRational::new(BigInt::one(), g.into()));
            denominator.push((n / g, nu / g));
        }
        denominator.sort();
        let mut z = TopoZeta { numerator, denominator };
        z.reduce();
        z
    }

    pub fn constant(c: BigRational) -> Self {
        TopoZeta { numerator: QPoly::constant(c), denominator: Vec::new() }
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let mut i = 0;
        while i < self.denominator.len() {
            let (n, nu) = self.denominator[i];
            let root = -BigRational::new(nu.into(), n.into());
            if self.numerator.eval(&root).is_zero() {
                self.numerator = self.numerator.div_exact(&linear(n, nu)).expect("root found");
                self.denominator.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.numerator
    }

    /// The primitive `(N, nu)` data of the denominator factors, sorted.
    pub fn denominator(&self) -> &[(u64, u64)] {
        &self.denominator
    }

    /// Candidate poles `-nu/N`, without repetition.
    pub fn poles(&self) -> Vec<BigRational> {
        let mut p: Vec<BigRational> = self.denominator.iter().map(|&(n, nu)| -BigRational::new(nu.into(), n.into())).collect();
        p.dedup();
        p
    }

    /// Value at `s`, or `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let den = product(&self.denominator).eval(s);
        (!den.is_zero()).then(|| self.numerator.eval(s) / den)
    }
}

impl PartialEq for TopoZeta {
    fn eq(&self, other: &Self) -> bool {
        let a = &self.numerator * &product(&minus(&other.denominator, &self.denominator));
        let b = &other.numerator * &product(&minus(&self.denominator, &other.denominator));
        a == b
    }
}

impl std::ops::Add for TopoZeta {
    type Output = TopoZeta;
    fn add(self, rhs: TopoZeta) -> TopoZeta {
        let mut lcm = self.denominator.clone();
        lcm.extend(minus(&rhs.denominator, &self.denominator));
        let a = &self.numerator * &product(&minus(&lcm, &self.denominator));
        let b = &rhs.numerator * &product(&minus(&lcm, &rhs.denominator));
        TopoZeta::new(a + b, &lcm)
    }
}

fn sum_strata(res: &ResolutionData, d: u64) -> Result<TopoZeta, EngineError> {
    if res.region == RegionSpec::Projective {
        return Err(EngineError::WrongRegion { expected: "an affine region", found: res.region });
    }
    let mut out = TopoZeta::constant(BigRational::zero());
    for (key, s) in &res.strata {
        if !res.in_j_d(key, d) {
            continue;
        }
        let chi = s.class.chi_top();
        if chi.is_zero() {
            continue;
        }
        let factors: Vec<(u64, u64)> = key.iter().map(|&i| (res.components[i].n, res.components[i].nu)).collect();
        out = out + TopoZeta::new(QPoly::constant(BigRational::from_integer(chi)), &factors);
    }
    Ok(out)
}

/// `sum_I chi_top(E_I° ∩ h^{-1}W) prod_{i in I} 1/(N_i s + nu_i)`.
pub fn topological_zeta(res: &ResolutionData) -> Result<TopoZeta, EngineError> {
    sum_strata(res, 1)
}

/// The character variant: the same sum restricted to `I in J_d`, `d` the
/// order of `alpha`. The twisted Euler characteristics agree with the
/// untwisted ones, so only the index set changes.
pub fn topological_zeta_twisted(res: &ResolutionData, alpha: Character) -> Result<TopoZeta, EngineError> {
    sum_strata(res, alpha.order())
}

fn fmt_coeff(c: &BigRational, f: &mut fmt::Formatter<'_>, with_var: bool) -> fmt::Result {
    let a = c.abs();
    match (with_var, a.is_integer()) {
        (true, true) if a.is_one() => Ok(()),
        (true, true) => write!(f, "{a}"),
        (true, false) => write!(f, "({a})"),
        (false, _) => write!(f, "{a}"),
    }
}

fn fmt_poly(p: &QPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        fmt_coeff(c, f, k > 0)?;
        match k {
            0 => {}
            1 => write!(f, "s")?,
            _ => write!(f, "s^{k}")?,
        }
    }
    Ok(())
}

fn fmt_factor(n: u64, nu: u64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if n == 1 {
        write!(f, "(s+{nu})")
    } else {
        write!(f, "({n}s+{nu})")
    }
}

/// Compact form such as `(4s+5)/((s+1)(6s+5))`.
impl fmt::Display for TopoZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.numerator.coeffs().iter().filter(|c| !c.is_zero()).count();
        if self.denominator.is_empty() {
            return fmt_poly(&self.numerator, f);
        }
        if terms > 1 {
            write!(f, "(")?;
            fmt_poly(&self.numerator, f)?;
            write!(f, ")")?;
        } else {
            fmt_poly(&self.numerator, f)?;
        }
        write!(f, "/")?;
        let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for &x in &self.denominator {
            *counts.entry(x).or_default() += 1;
        }
        let wrap = self.denominator.len() > 1;
        if wrap {
            write!(f, "(")?;
        }
        for (&(n, nu), &k) in &counts {
            fmt_factor(n, nu, f)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TopoJson {
    numerator: Vec<String>,
    denominator: Vec<(u64, u64)>,
}

/// JSON form: numerator coefficients (ascending powers of `s`) as fraction
/// strings and the denominator as `[N, nu]` pairs.
impl Serialize for TopoZeta {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TopoJson { numerator: self.numerator.coeffs().iter().map(|c| c.to_string()).collect(), denominator: self.denominator.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TopoZeta {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = TopoJson::deserialize(deserializer)?;
        let coeffs = j
            .numerator
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        if j.denominator.iter().any(|&(n, nu)| n == 0 || nu == 0) {
            return Err(serde::de::Error::custom("denominator factors need positive N and nu"));
        }
        Ok(TopoZeta::new(QPoly::new(coeffs), &j.denominator))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_polynomial;
    use crate::strata::{from_monomial, resolve_plane_curve};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn smooth_line() {
        let z = topological_zeta(&from_monomial(&[1], 1, RegionSpec::Whole).unwrap()).unwrap();
        assert_eq!(z, TopoZeta::new(QPoly::constant(q(1)), &[(1, 1)]));
        assert_eq!(z.to_string(), "1/(s+1)");
    }

    #[test]
    fn cusp() {
        let res = resolve_plane_curve(&parse_polynomial("y^2 - x^3").unwrap(), RegionSpec::Origin).unwrap();
        let z = topological_zeta(&res).unwrap();
        let expect = TopoZeta::new(QPoly::new(vec![q(5), q(4)]), &[(1, 1), (6, 5)]);
        assert_eq!(z, expect);
        assert_eq!(z.to_string(), "(4s+5)/((s+1)(6s+5))");
        assert_eq!(z.eval(&q(0)), Some(q(1)));
    }

    #[test]
    fn factors_are_made_primitive() {
        let z = TopoZeta::new(QPoly::constant(q(2)), &[(2, 2)]);
        assert_eq!(z.denominator(), &[(1, 1)]);
        assert_eq!(z.numerator(), &QPoly::constant(q(1)));
        let c = TopoZeta::new(QPoly::new(vec![q(1), q(1)]), &[(1, 1), (3, 2)]);
        assert_eq!(c.denominator(), &[(3, 2)]);
        assert_eq!(c.to_string(), "1/(3s+2)");
    }

    #[test]
    fn json_round_trip() {
        let z = TopoZeta::new(QPoly::new(vec![q(5), q(4)]), &[(1, 1), (6, 5)]);
        let back: TopoZeta = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
        assert_eq!(back.to_string(), z.to_string());
    }
}
