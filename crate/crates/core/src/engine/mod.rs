//! Zeta functions from resolution data: the motivic formula over a
//! resolution, the homogeneous formula over projective data, and the
//! specializations built on them.

mod functional;
mod nearby;
mod padic;
mod topological;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::kgroup::{class_gm, int, Character, KGroupError};
use crate::strata::{RegionSpec, ResolutionData, StrataError, StratumKey};
use crate::zeta::{Gate, ZetaError, ZetaFn};
use crate::{EPoly, SPoly};

pub use functional::{check_functional_equation, FunctionalEquationReport};
pub use nearby::{hodge_spectrum, hodge_spectrum_with, s_alpha_x, s_alpha_x_routes, SAlphaRoutes};
pub use padic::{padic_specialize, PadicZeta};
pub use topological::{topological_zeta, topological_zeta_twisted, TopoZeta};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    KGroup(#[from] KGroupError),
    #[error("region {found} is not allowed here; expected {expected}")]
    WrongRegion { expected: &'static str, found: RegionSpec },
    #[error("{0} is not divisible by 1 - L")]
    NotDivisible(String),
    #[error("the two routes to S_alpha disagree: {ct_route} versus {closed_form}")]
    RouteMismatch { ct_route: String, closed_form: String },
}

/// `(L - 1) L^{-nu} S^N / (1 - L^{-nu} S^N)` for one component.
fn component_factor(n: u64, nu: u64) -> ZetaFn {
    let g = Gate { s_degree: n, l_weight: nu };
    let c = &class_gm() * &EPoly::lefschetz_pow(-(nu as i64));
    ZetaFn::new(SPoly::monomial(c, n as usize), vec![g])
}

/// The motivic zeta function `Z(s, alpha)` of the resolution data:
///
/// ```text
/// L^{-m} sum_{I in J_d} [(E_I° ∩ h^{-1}W)_alpha] prod_{i in I} (L-1) L^{-N_i s - nu_i} / (1 - L^{-N_i s - nu_i})
/// ```
///
/// where `d` is the order of `alpha`.
pub fn motivic_zeta(res: &ResolutionData, alpha: Character) -> Result<ZetaFn, EngineError> {
    if res.region == RegionSpec::Projective {
        return Err(EngineError::WrongRegion { expected: "an affine region", found: res.region });
    }
    let d = alpha.order();
    let mut terms = Vec::new();
    for (key, s) in &res.strata {
        if s.class.is_zero() || !res.in_j_d(key, d) {
            continue;
        }
        let c = res.twisted_class(key, alpha)?;
        if c.is_zero() {
            continue;
        }
        let (n, nu) = key.iter().fold((0u64, 0u64), |(n, nu), &i| (n + res.components[i].n, nu + res.components[i].nu));
        let coeff = &(&c * &class_gm().pow(key.len() as u32)) * &EPoly::lefschetz_pow(-(nu as i64) - res.dim as i64);
        let g: Vec<Gate> = key.iter().map(|&i| Gate { s_degree: res.components[i].n, l_weight: res.components[i].nu }).collect();
        terms.push((coeff, n as usize, g));
    }
    // bring every term over the common gate multiset once, instead of
    // normalizing after each addition
    let mut common: Vec<Gate> = Vec::new();
    for (_, _, g) in &terms {
        let mut need = g.clone();
        for x in &common {
            if let Some(p) = need.iter().position(|y| y == x) {
                need.swap_remove(p);
            }
        }
        common.extend(need);
    }
    common.sort();
    let mut numerator = SPoly::zero();
    for (coeff, n, g) in terms {
        let mut rest = common.clone();
        for x in &g {
            let p = rest.iter().position(|y| y == x).expect("common multiset contains every term's gates");
            rest.remove(p);
        }
        let other = rest.iter().fold(SPoly::one(), |acc, x| &acc * &x.polynomial());
        numerator = numerator + &SPoly::monomial(coeff, n) * &other;
    }
    Ok(ZetaFn::new(numerator, common))
}

/// Sum of the zeta functions for all characters of order dividing `d`.
pub fn motivic_zeta_cover(res: &ResolutionData, d: u64) -> Result<ZetaFn, EngineError> {
    Character::all_dividing(d).into_iter().try_fold(ZetaFn::zero(), |acc, a| Ok(acc + motivic_zeta(res, a)?))
}

/// The zeta function on affine `m`-space of a homogeneous polynomial of
/// degree `r`, from data of its projective hypersurface:
///
/// ```text
/// (L-1) L^{-m} / (1 - L^{-rs-m}) * sum_{I in J_d} [E_I^{(d)}]_alpha prod_{i in I} (G_i - 1)
/// ```
///
/// with `G_i = (L-1) L^{-N_i s - nu_i} / (1 - L^{-N_i s - nu_i})` and
/// `E_I^{(d)}` the union of the strata `E_K°`, `K ⊇ I`, `K in J_d`. The value
/// is zero when the order of `alpha` does not divide `r`.
pub fn homogeneous_zeta(proj: &ResolutionData, r: u64, alpha: Character) -> Result<ZetaFn, EngineError> {
    if proj.region != RegionSpec::Projective {
        return Err(EngineError::WrongRegion { expected: "projective", found: proj.region });
    }
    let d = alpha.order();
    if r == 0 || r % d != 0 {
        return Ok(ZetaFn::zero());
    }
    let m = proj.dim as i64;
    let mut twisted = Vec::new();
    for (key, s) in &proj.strata {
        if s.class.is_zero() || !proj.in_j_d(key, d) {
            continue;
        }
        twisted.push((key, proj.twisted_class(key, alpha)?));
    }
    let mut index: BTreeSet<StratumKey> = BTreeSet::new();
    for (key, _) in &twisted {
        let v: Vec<usize> = key.iter().copied().collect();
        for mask in 0u64..1 << v.len() {
            index.insert((0..v.len()).filter(|&b| mask >> b & 1 == 1).map(|b| v[b]).collect());
        }
    }
    let mut sum = ZetaFn::zero();
    for i in &index {
        let closure = twisted.iter().filter(|(k, _)| i.is_subset(k)).fold(EPoly::zero(), |a, (_, c)| a + c.clone());
        if closure.is_zero() {
            continue;
        }
        let prod = i.iter().fold(ZetaFn::one(), |acc, &c| {
            let comp = &proj.components[c];
            &acc * &(component_factor(comp.n, comp.nu) - ZetaFn::one())
        });
        sum = sum + &ZetaFn::constant(closure) * &prod;
    }
    let head = ZetaFn::new(SPoly::constant(&class_gm() * &EPoly::lefschetz_pow(-m)), vec![Gate { s_degree: r, l_weight: m as u64 }]);
    Ok(&head * &sum)
}

/// `S^r`, the factor `L^{-rs}` of the functional equation.
pub(crate) fn s_power(r: u64) -> ZetaFn {
    ZetaFn::monomial(int(1), r as usize)
}
