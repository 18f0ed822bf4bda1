//! The eigenparts `S_{alpha,x}` of the motivic nearby fiber at a point and
//! the Hodge spectrum read off from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{motivic_zeta, EngineError};
use crate::kgroup::{int, Character};
use crate::spectrum::SpectrumPoly;
use crate::strata::{RegionSpec, ResolutionData, StrataError};
use crate::EPoly;

/// Both evaluations of `S_{alpha,x}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SAlphaRoutes {
    pub character: Character,
    /// `L^m / (1 - L) * CT Z(s, alpha)`.
    pub ct_route: EPoly,
    /// `sum_{I in J_d} [E_I°_alpha] (1 - L)^{|I| - 1}`.
    pub closed_form: EPoly,
}

fn one_minus_l() -> EPoly {
    int(1) - EPoly::lefschetz()
}

fn require_point(res: &ResolutionData) -> Result<(), EngineError> {
    if res.region != RegionSpec::Origin {
        return Err(EngineError::WrongRegion { expected: "origin", found: res.region });
    }
    if res.strata.get(&Default::default()).is_some_and(|s| !s.class.is_zero()) {
        return Err(StrataError::NotACurvePoint.into());
    }
    Ok(())
}

/// Computes `S_{alpha,x}` both through the constant term of the zeta
/// function and through the closed form, without comparing them.
pub fn s_alpha_x_routes(res: &ResolutionData, alpha: Character) -> Result<SAlphaRoutes, EngineError> {
    require_point(res)?;
    let d = alpha.order();
    let ct = motivic_zeta(res, alpha)?.ct()?;
    let scaled = &ct * &EPoly::lefschetz_pow(res.dim as i64);
    let ct_route = scaled.div_exact(&one_minus_l()).ok_or_else(|| EngineError::NotDivisible(scaled.to_string()))?;
    let mut closed_form = EPoly::zero();
    for (key, s) in &res.strata {
        if key.is_empty() || s.class.is_zero() || !res.in_j_d(key, d) {
            continue;
        }
        let c = res.twisted_class(key, alpha)?;
        closed_form = closed_form + &c * &one_minus_l().pow(key.len() as u32 - 1);
    }
    Ok(SAlphaRoutes { character: alpha, ct_route, closed_form })
}

/// `S_{alpha,x}` for resolution data over a point; both routes are computed
/// and must agree.
pub fn s_alpha_x(res: &ResolutionData, alpha: Character) -> Result<EPoly, EngineError> {
    let r = s_alpha_x_routes(res, alpha)?;
    if r.ct_route != r.closed_form {
        return Err(EngineError::RouteMismatch { ct_route: r.ct_route.to_string(), closed_form: r.closed_form.to_string() });
    }
    Ok(r.closed_form)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Hodge spectrum `Sp(f, x)` using all characters whose order divides the
/// `lcm` of the multiplicities.
pub fn hodge_spectrum(res: &ResolutionData) -> Result<SpectrumPoly, EngineError> {
    hodge_spectrum_with(res, &divisors(res.lcm_n()))
}

/// Hodge spectrum from the characters of the listed orders:
///
/// ```text
/// HSp  = (-1)^{m-1} sum_alpha hsp(S_{alpha,x}) t^{gamma(alpha)}
/// HSp' = HSp - (-1)^{m-1}
/// Sp   = t^m iota(HSp')
/// ```
pub fn hodge_spectrum_with(res: &ResolutionData, orders: &[u64]) -> Result<SpectrumPoly, EngineError> {
    let m = res.dim as i64;
    let sign = if m % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    let mut hsp = SpectrumPoly::new();
    let mut seen = std::collections::BTreeSet::new();
    for &d in orders {
        for alpha in Character::of_order(d) {
            if !seen.insert(alpha) {
                continue;
            }
            let s = s_alpha_x(res, alpha)?;
            let gamma = alpha.gamma();
            for (p, c) in s.hsp_eval() {
                hsp.add_term(BigRational::from_integer(p.into()) + &gamma, &sign * c);
            }
        }
    }
    let reduced = hsp.add_constant(&-sign);
    Ok(reduced.iota().shift(&BigRational::from_integer(m.into())))
}
