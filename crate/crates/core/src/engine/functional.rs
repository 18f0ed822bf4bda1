//! The functional equation of homogeneous polynomials: the dual of the zeta
//! function at `alpha` equals `L^{-rs}` times the zeta function at
//! `alpha^{-1}`.

use serde::{Deserialize, Serialize};

use super::s_power;
use crate::zeta::{ZetaFn, ZetaJson};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalEquationReport {
    pub degree: u64,
    pub holds: bool,
    /// `dual(Z) - S^r Z_target` in canonical form, when the identity fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<ZetaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_text: Option<String>,
    /// Set when `Z` has no dual in the localized power-series ring.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Compares `dual(z)` with `S^r target`, where `target` is the zeta function
/// at the inverse character (`z` itself when omitted). Failure is reported,
/// not raised.
pub fn check_functional_equation(z: &ZetaFn, r: u64, target: Option<&ZetaFn>) -> FunctionalEquationReport {
    let target = target.unwrap_or(z);
    match z.dual() {
        Ok(d) => {
            let diff = d - &s_power(r) * target;
            let holds = num_traits::Zero::is_zero(&diff);
            FunctionalEquationReport {
                degree: r,
                holds,
                difference: (!holds).then(|| ZetaJson::from(&diff)),
                difference_text: (!holds).then(|| diff.to_string()),
                error: None,
            }
        }
        Err(e) => FunctionalEquationReport { degree: r, holds: false, difference: None, difference_text: None, error: Some(e.to_string()) },
    }
}
