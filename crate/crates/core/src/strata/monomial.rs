//! Monomials `f = x^w`: the identity map is already a resolution, with the
//! coordinate hyperplanes as components and coordinate tori as strata.

use std::collections::BTreeMap;

use num_traits::One;

use super::{Component, RegionSpec, ResolutionData, StrataError, Stratum, StratumKey, TwistData};
use crate::kgroup::class_gm;
use crate::mpoly::VARIABLES;
use crate::EPoly;

fn var_name(i: usize) -> String {
    VARIABLES.get(i).map(|c| c.to_string()).unwrap_or_else(|| format!("x{}", i + 1))
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Resolution data of `x^w` in affine `m`-space over the given region.
/// Variables beyond `w.len()` do not occur in `f`.
pub fn from_monomial(w: &[u32], m: usize, region: RegionSpec) -> Result<ResolutionData, StrataError> {
    if w.iter().all(|&e| e == 0) {
        return Err(StrataError::ZeroPolynomial);
    }
    if m < w.len() {
        return Err(StrataError::Unsupported(format!("{} exponents in dimension {m}", w.len())));
    }
    let supp: Vec<usize> = (0..w.len()).filter(|&i| w[i] > 0).collect();
    let free = (m - supp.len()) as i64;
    let components = supp
        .iter()
        .map(|&i| Component { id: var_name(i), n: w[i] as u64, nu: 1, exceptional: false })
        .collect();
    let mut strata = BTreeMap::new();
    for sub in subsets(supp.len()) {
        let key: StratumKey = sub.iter().copied().collect();
        let rest: Vec<usize> = (0..supp.len()).filter(|c| !key.contains(c)).collect();
        let torus = class_gm().pow(rest.len() as u32);
        let class = match region {
            RegionSpec::Whole => &torus * &EPoly::lefschetz_pow(free),
            RegionSpec::Origin if rest.is_empty() => EPoly::one(),
            RegionSpec::Origin => continue,
            RegionSpec::Hyperplane(h) if h >= m => {
                return Err(StrataError::Unsupported(format!("hyperplane x{h} = 0 in dimension {m}")));
            }
            RegionSpec::Hyperplane(h) => match supp.iter().position(|&i| i == h) {
                Some(c) if key.contains(&c) => &torus * &EPoly::lefschetz_pow(free),
                Some(_) => continue,
                None => &torus * &EPoly::lefschetz_pow(free - 1),
            },
            RegionSpec::Projective => return Err(StrataError::Unsupported("use projective_monomial".into())),
        };
        let exponents = rest.iter().map(|&c| w[supp[c]] as i64).collect();
        strata.insert(key, Stratum { class, twist: TwistData::Torus { exponents } });
    }
    Ok(ResolutionData { dim: m, region, components, strata, total_class: region.class(m) })
}

/// Data of the projective hypersurface `x^w = 0` in `P^{m-1}`, `m = w.len()`,
/// for the homogeneous formula. Every variable must occur.
pub fn projective_monomial(w: &[u32]) -> Result<ResolutionData, StrataError> {
    if w.iter().any(|&e| e == 0) {
        return Err(StrataError::Unsupported("projective monomial data needs every variable to occur".into()));
    }
    let m = w.len();
    let components = (0..m).map(|i| Component { id: var_name(i), n: w[i] as u64, nu: 1, exceptional: false }).collect();
    let mut strata = BTreeMap::new();
    for sub in subsets(m) {
        if sub.len() == m {
            continue;
        }
        let key: StratumKey = sub.iter().copied().collect();
        let rest: Vec<i64> = (0..m).filter(|c| !key.contains(c)).map(|c| w[c] as i64).collect();
        let class = class_gm().pow((m - 1 - sub.len()) as u32);
        strata.insert(key, Stratum { class, twist: TwistData::Torus { exponents: rest } });
    }
    let total = (0..m as i64).fold(EPoly::default(), |a, k| a + EPoly::lefschetz_pow(k));
    Ok(ResolutionData { dim: m, region: RegionSpec::Projective, components, strata, total_class: Some(total) })
}
