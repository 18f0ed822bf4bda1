use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Gate, ZetaError, ZetaFn};
use crate::{EPoly, SPoly};

fn needs_parens(c: &EPoly) -> bool {
    c.num_terms() > 1
}

impl fmt::Display for ZetaFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (a, c) in self.numerator.coeffs().iter().enumerate() {
            if c.num_terms() == 0 {
                continue;
            }
            let s_part = match a {
                0 => String::new(),
                1 => "L^(-s)".to_string(),
                _ => format!("L^(-{a}s)"),
            };
            parts.push(match (a, needs_parens(c)) {
                (0, _) => c.to_string(),
                (_, true) => format!("({c})*{s_part}"),
                (_, false) => format!("{c}*{s_part}"),
            });
        }
        let compound = parts.len() > 1 || self.numerator.coeffs().iter().any(needs_parens);
        let numerator = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        if self.gates.is_empty() {
            return write!(f, "{numerator}");
        }
        if compound {
            write!(f, "({numerator})")?;
        } else {
            write!(f, "{numerator}")?;
        }
        write!(f, " / (")?;
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            let s = if g.s_degree == 1 { "s".to_string() } else { format!("{}s", g.s_degree) };
            write!(f, "(1 - L^(-{s} - {}))", g.l_weight)?;
        }
        write!(f, ")")
    }
}

/// Machine-readable form: numerator coefficients indexed by the power of
/// `S = L^{-s}`, each a list of `[p, q, c]` Hodge terms, and the gate list as
/// `[N, n]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub numerator: Vec<EPoly>,
    pub gates: Vec<(u64, u64)>,
}

impl From<&ZetaFn> for ZetaJson {
    fn from(z: &ZetaFn) -> Self {
        ZetaJson {
            numerator: z.numerator.coeffs().to_vec(),
            gates: z.gates.iter().map(|g| (g.s_degree, g.l_weight)).collect(),
        }
    }
}

impl TryFrom<ZetaJson> for ZetaFn {
    type Error = ZetaError;
    fn try_from(j: ZetaJson) -> Result<Self, ZetaError> {
        let gates = j.gates.into_iter().map(|(n, w)| Gate::new(n, w)).collect::<Result<Vec<_>, _>>()?;
        Ok(ZetaFn::new(SPoly::new(j.numerator), gates))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgroup::class_gm;

    #[test]
    fn renders_numerator_over_gates() {
        let c = &EPoly::lefschetz_pow(-1) * &class_gm();
        let z = ZetaFn::new(SPoly::constant(c), vec![Gate::new(1, 1).unwrap(), Gate::new(6, 5).unwrap()]);
        assert_eq!(z.to_string(), "(1 - L^-1) / ((1 - L^(-s - 1))*(1 - L^(-6s - 5)))");
        let s = ZetaFn::monomial(EPoly::lefschetz_pow(-2), 2);
        assert_eq!(s.to_string(), "L^-2*L^(-2s)");
    }

    #[test]
    fn json_round_trip() {
        let z = ZetaFn::new(SPoly::new(vec![class_gm(), EPoly::u()]), vec![Gate::new(2, 3).unwrap()]);
        let j = serde_json::to_string(&ZetaJson::from(&z)).unwrap();
        let back: ZetaJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ZetaFn::try_from(back).unwrap(), z);
    }
}
