//! Specialization of a Tate zeta function to the p-adic zeta function in
//! `T = q^{-s}`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::zeta::ZetaFn;
use crate::QPoly;

/// `numerator(T) / prod (1 - q^{-nu} T^N)` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PadicZeta {
    pub q: u64,
    /// Coefficients of `T^0, T^1, ...` as fraction strings in JSON.
    #[serde(with = "rational_vec")]
    pub numerator: Vec<BigRational>,
    /// `[N, nu]` for each factor `1 - q^{-nu} T^N`.
    pub gates: Vec<(u64, u64)>,
}

mod rational_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|c| c.parse().map_err(serde::de::Error::custom)).collect()
    }
}

/// Substitutes `L = q` in every coefficient. Fails with `NotTate` when a
/// coefficient is not a Laurent polynomial in `L`.
pub fn padic_specialize(z: &ZetaFn, q: u64) -> Result<PadicZeta, EngineError> {
    let qr = BigRational::from_integer(q.into());
    let numerator = z.numerator().coeffs().iter().map(|c| c.tate_eval(&qr)).collect::<Result<Vec<_>, _>>()?;
    let mut out = PadicZeta { q, numerator, gates: z.gates().iter().map(|g| (g.s_degree, g.l_weight)).collect() };
    out.reduce();
    Ok(out)
}

impl PadicZeta {
    fn q_inv_pow(&self, k: u64) -> BigRational {
        BigRational::from_integer(self.q.into()).recip().pow(k as i32)
    }

    fn gate_poly(&self, n: u64, nu: u64) -> QPoly {
        QPoly::one() - QPoly::monomial(self.q_inv_pow(nu), n as usize)
    }

    /// Cancels what the rational numerator shares with the gates. A gate
    /// `1 - q^{-nu} T^N` is divisible by `1 - q^{-nu'} T^{N'}` whenever
    /// `N' | N` and `nu' = nu N'/N`, so it shrinks to the smallest such
    /// gate whose cofactor divides the numerator, or disappears.
    fn reduce(&mut self) {
        let mut num = QPoly::new(self.numerator.clone());
        if num.is_zero() {
            self.gates.clear();
        }
        let mut i = 0;
        while i < self.gates.len() {
            let (n, nu) = self.gates[i];
            let full = self.gate_poly(n, nu);
            if let Some(rest) = num.div_exact(&full) {
                num = rest;
                self.gates.remove(i);
                continue;
            }
            for m in (1..n).filter(|m| n % m == 0 && nu * m % n == 0) {
                let cofactor = full.div_exact(&self.gate_poly(m, nu * m / n)).expect("gate divides gate");
                if let Some(rest) = num.div_exact(&cofactor) {
                    num = rest;
                    self.gates[i] = (m, nu * m / n);
                    break;
                }
            }
            i += 1;
        }
        self.gates.sort_unstable();
        self.numerator = num.into_coeffs();
    }

    /// Power-series coefficients of `T^0 .. T^{n_max}`.
    pub fn series(&self, n_max: usize) -> Vec<BigRational> {
        let len = n_max + 1;
        let mut acc = QPoly::new(self.numerator.clone()).truncate(len);
        for &(n, nu) in &self.gates {
            let mut terms = vec![BigRational::zero(); len];
            let r = self.q_inv_pow(nu);
            let mut c = BigRational::one();
            let mut i = 0;
            while i < len {
                terms[i] = c.clone();
                c = c * &r;
                i += n as usize;
            }
            acc = (&acc * &QPoly::new(terms)).truncate(len);
        }
        (0..len).map(|i| acc.coeff(i)).collect()
    }

    /// Value at `T = t`, or `None` at a pole.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let den = self.gates.iter().fold(BigRational::one(), |acc, &(n, nu)| acc * (BigRational::one() - self.q_inv_pow(nu) * t.pow(n as i32)));
        (!den.is_zero()).then(|| QPoly::new(self.numerator.clone()).eval(t) / den)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &BigRational, k: usize) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let a = c.abs();
    match k {
        0 => write!(f, "{a}"),
        _ if a.is_one() => write!(f, "T{}", if k == 1 { String::new() } else { format!("^{k}") }),
        1 => write!(f, "{a}*T"),
        _ => write!(f, "{a}*T^{k}"),
    }
}

/// Renders e.g. `2/3 / (1 - 1/3*T)`, with `T = q^(-s)`.
impl fmt::Display for PadicZeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<(usize, &BigRational)> = self.numerator.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if nz.is_empty() {
            return write!(f, "0");
        }
        let wrap = nz.len() > 1 && !self.gates.is_empty();
        if wrap {
            write!(f, "(")?;
        }
        for (i, (k, c)) in nz.iter().enumerate() {
            write_term(f, i == 0, c, *k)?;
        }
        if wrap {
            write!(f, ")")?;
        }
        if self.gates.is_empty() {
            return Ok(());
        }
        write!(f, " / ")?;
        let outer = self.gates.len() > 1;
        if outer {
            write!(f, "(")?;
        }
        for (i, &(n, nu)) in self.gates.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "(1")?;
            write_term(f, false, &-self.q_inv_pow(nu), n as usize)?;
            write!(f, ")")?;
        }
        if outer {
            write!(f, ")")?;
        }
        Ok(())
    }
}
