//! Embedded resolution data: components with their numerical data `(N, nu)`,
//! the strata `E_I°` intersected with the region, and what is needed to
//! compute the character-twisted class of each stratum.

mod file;
mod monomial;
mod plane;
mod twist;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::kgroup::{class_gm, int, Character};
use crate::EPoly;

pub use file::{load_resolution, save_resolution};
pub use monomial::{from_monomial, projective_monomial};
pub use plane::{projective_binary_form, resolve_plane_curve, resolve_plane_curve_with_cap, DEFAULT_BLOWUP_CAP};
pub use twist::{cover_eigenclass_p1, twisted_class_torus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("the point is not on the curve")]
    NotACurvePoint,
    #[error("resolution needs more than {0} blowups")]
    ResolutionBudgetExceeded(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("puncture exponents sum to {sum}, which is not divisible by {order}")]
    DegreeMismatch { sum: i64, order: u64 },
    #[error("stratum is not a torus")]
    NotToric,
    #[error("no twisted class for stratum {stratum} at character {character}")]
    MissingTwistedClass { stratum: String, character: Character },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("{0}")]
    Parse(String),
}

/// The region `W` the zeta function integrates over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionSpec {
    /// All of affine space.
    Whole,
    /// The origin.
    Origin,
    /// The coordinate hyperplane `x_i = 0`.
    Hyperplane(usize),
    /// Data of the projectivized hypersurface of a homogeneous polynomial,
    /// consumed by the homogeneous formula.
    Projective,
}

impl RegionSpec {
    /// Class of the region inside affine `m`-space.
    pub fn class(&self, m: usize) -> Option<EPoly> {
        match self {
            RegionSpec::Whole => Some(EPoly::lefschetz_pow(m as i64)),
            RegionSpec::Origin => Some(EPoly::one()),
            RegionSpec::Hyperplane(_) => Some(EPoly::lefschetz_pow(m as i64 - 1)),
            RegionSpec::Projective => None,
        }
    }
}

impl fmt::Display for RegionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionSpec::Whole => write!(f, "all"),
            RegionSpec::Origin => write!(f, "origin"),
            RegionSpec::Hyperplane(i) => write!(f, "hyperplane:{i}"),
            RegionSpec::Projective => write!(f, "projective"),
        }
    }
}

impl std::str::FromStr for RegionSpec {
    type Err = StrataError;
    fn from_str(s: &str) -> Result<Self, StrataError> {
        match s {
            "all" | "whole" => Ok(RegionSpec::Whole),
            "origin" | "0" => Ok(RegionSpec::Origin),
            "projective" => Ok(RegionSpec::Projective),
            _ => s
                .strip_prefix("hyperplane:")
                .and_then(|i| i.parse().ok())
                .map(RegionSpec::Hyperplane)
                .ok_or_else(|| StrataError::Parse(format!("unknown region `{s}` (all, origin, hyperplane:<i>, projective)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    /// Multiplicity of `f` along the component.
    pub n: u64,
    /// One plus the multiplicity of the component in the relative canonical
    /// divisor.
    pub nu: u64,
    pub exceptional: bool,
}

/// How the character-twisted class of a stratum is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistData {
    /// Only the untwisted class is known.
    Untwisted,
    /// The stratum is a torus (times affine factors) on which the unit part
    /// of `f` is a constant times the monomial with these exponents.
    Torus { exponents: Vec<i64> },
    /// The stratum is a projective line minus punctures; each puncture is
    /// `(neighbouring component, order of the unit part of f there)`.
    PuncturedLine { punctures: Vec<(usize, i64)> },
    /// `G_m` times a punctured projective line, the unit part being
    /// `lambda^torus_exponent` times a function with the given puncture
    /// orders.
    TorusTimesLine { torus_exponent: i64, punctures: Vec<i64> },
    /// Classes listed per character.
    Explicit(BTreeMap<Character, EPoly>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    /// Class of `E_I° ∩ h^{-1}(W)`.
    pub class: EPoly,
    pub twist: TwistData,
}

pub type StratumKey = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionData {
    /// Ambient dimension `m`.
    pub dim: usize,
    pub region: RegionSpec,
    pub components: Vec<Component>,
    pub strata: BTreeMap<StratumKey, Stratum>,
    /// Class of `h^{-1}(W)`, when the builder knows it independently.
    pub total_class: Option<EPoly>,
}

impl ResolutionData {
    /// Whether every component of `key` has multiplicity divisible by `d`.
    pub fn in_j_d(&self, key: &StratumKey, d: u64) -> bool {
        key.iter().all(|&i| self.components[i].n % d == 0)
    }

    /// `lcm` of all multiplicities, the largest order with nonempty `J_d`
    /// beyond the empty stratum.
    pub fn lcm_n(&self) -> u64 {
        self.components.iter().fold(1, |l, c| l.lcm(&c.n))
    }

    pub fn component_index(&self, id: &str) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    /// Human-readable name of a stratum, e.g. `{E1,E3}`.
    pub fn stratum_name(&self, key: &StratumKey) -> String {
        let ids: Vec<&str> = key.iter().map(|&i| self.components[i].id.as_str()).collect();
        format!("{{{}}}", ids.join(","))
    }

    /// The class `[(E_I° ∩ h^{-1}W)_{f,alpha}]`.
    pub fn twisted_class(&self, key: &StratumKey, alpha: Character) -> Result<EPoly, StrataError> {
        let s = self.strata.get(key).ok_or_else(|| StrataError::MissingTwistedClass {
            stratum: self.stratum_name(key),
            character: alpha,
        })?;
        if alpha.is_trivial() {
            return Ok(s.class.clone());
        }
        let missing = || StrataError::MissingTwistedClass { stratum: self.stratum_name(key), character: alpha };
        match &s.twist {
            TwistData::Untwisted => Err(missing()),
            TwistData::Torus { exponents } => Ok(twisted_class_torus(&s.class, exponents, alpha)),
            TwistData::PuncturedLine { punctures } => {
                let e: Vec<i64> = punctures.iter().map(|p| p.1).collect();
                cover_eigenclass_p1(&e, alpha)
            }
            TwistData::TorusTimesLine { torus_exponent, punctures } => {
                if torus_exponent.rem_euclid(alpha.order() as i64) != 0 {
                    Ok(EPoly::zero())
                } else {
                    Ok(&class_gm() * &cover_eigenclass_p1(punctures, alpha)?)
                }
            }
            TwistData::Explicit(map) => map.get(&alpha).cloned().ok_or_else(missing),
        }
    }

    /// Checks positivity of the numerical data, well-formed stratum keys,
    /// consistency of twist data with untwisted classes, and additivity
    /// against the total class when it is known.
    pub fn check(&self) -> Result<(), StrataError> {
        let bad = |m: String| Err(StrataError::InvariantViolation(m));
        if self.dim == 0 {
            return bad("dimension must be positive".into());
        }
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if c.n == 0 || c.nu == 0 {
                return bad(format!("component {} has N = {}, nu = {}; both must be positive", c.id, c.n, c.nu));
            }
            if !ids.insert(c.id.as_str()) {
                return bad(format!("duplicate component id {}", c.id));
            }
        }
        for (key, s) in &self.strata {
            if key.iter().any(|&i| i >= self.components.len()) {
                return bad("stratum refers to an unknown component".into());
            }
            let expected = match &s.twist {
                TwistData::PuncturedLine { punctures } => {
                    if punctures.iter().any(|p| p.0 >= self.components.len()) {
                        return bad(format!("stratum {} has a puncture on an unknown component", self.stratum_name(key)));
                    }
                    Some(EPoly::lefschetz() + int(1) - int(punctures.len() as i64))
                }
                TwistData::TorusTimesLine { punctures, .. } => {
                    Some(&class_gm() * &(EPoly::lefschetz() + int(1) - int(punctures.len() as i64)))
                }
                TwistData::Explicit(map) => map.get(&Character::trivial()).cloned(),
                _ => None,
            };
            if let Some(e) = expected {
                if e != s.class {
                    return bad(format!("stratum {} has class {} but its twist data implies {}", self.stratum_name(key), s.class, e));
                }
            }
        }
        if let Some(total) = &self.total_class {
            let sum = self.strata.values().fold(EPoly::zero(), |a, s| a + s.class.clone());
            if &sum != total {
                return bad(format!("strata classes sum to {sum}, expected {total}"));
            }
        }
        Ok(())
    }

    fn push_component(&mut self, prefix: &str, n: u64, nu: u64) -> usize {
        let mut k = self.components.len() + 1;
        while self.component_index(&format!("{prefix}{k}")).is_some() {
            k += 1;
        }
        self.components.push(Component { id: format!("{prefix}{k}"), n, nu, exceptional: true });
        self.components.len() - 1
    }

    /// Blows up a point of `E_i°` on the component `i`. The new exceptional
    /// curve has `N = N_i` and `nu = nu_i + 1`. Requires a curve resolution
    /// (dimension 2) whose stratum `{i}` is a punctured projective line or
    /// carries no twist data.
    pub fn blowup_free_point(&self, i: usize) -> Result<Self, StrataError> {
        if self.dim != 2 {
            return Err(StrataError::Unsupported("extra blowups are implemented for surfaces only".into()));
        }
        let key: StratumKey = [i].into();
        let s = self.strata.get(&key).ok_or_else(|| StrataError::Unsupported(format!("component {i} has no open stratum in the region")))?;
        let mut out = self.clone();
        let c = &self.components[i];
        let new = out.push_component("B", c.n, c.nu + 1);
        let twist = match &s.twist {
            TwistData::PuncturedLine { punctures } => {
                let mut p = punctures.clone();
                p.push((new, c.n as i64));
                TwistData::PuncturedLine { punctures: p }
            }
            TwistData::Untwisted => TwistData::Untwisted,
            _ => return Err(StrataError::Unsupported("free-point blowup needs a punctured-line stratum".into())),
        };
        out.strata.insert(key, Stratum { class: s.class.clone() - int(1), twist });
        out.strata.insert([new].into(), Stratum { class: EPoly::lefschetz(), twist: TwistData::PuncturedLine { punctures: vec![(i, c.n as i64)] } });
        out.strata.insert([i, new].into(), Stratum { class: int(1), twist: TwistData::Torus { exponents: vec![] } });
        if let Some(t) = &mut out.total_class {
            *t = t.clone() + EPoly::lefschetz();
        }
        Ok(out)
    }

    /// Blows up one point of `E_i ∩ E_j`. The new exceptional curve has
    /// `N = N_i + N_j` and `nu = nu_i + nu_j`.
    pub fn blowup_crossing(&self, i: usize, j: usize) -> Result<Self, StrataError> {
        if self.dim != 2 {
            return Err(StrataError::Unsupported("extra blowups are implemented for surfaces only".into()));
        }
        let key: StratumKey = [i, j].into();
        let s = self.strata.get(&key).filter(|s| !s.class.is_zero()).ok_or_else(|| StrataError::Unsupported(format!("components {i} and {j} do not meet in the region")))?;
        let mut out = self.clone();
        let (ci, cj) = (&self.components[i], &self.components[j]);
        let (ni, nj) = (ci.n as i64, cj.n as i64);
        let new = out.push_component("B", ci.n + cj.n, ci.nu + cj.nu);
        out.strata.insert(key.clone(), Stratum { class: s.class.clone() - int(1), twist: s.twist.clone() });
        if out.strata[&key].class.is_zero() {
            out.strata.remove(&key);
        }
        for (a, b, na) in [(i, j, ni), (j, i, nj)] {
            if let Some(st) = out.strata.get_mut(&[a].into()) {
                if let TwistData::PuncturedLine { punctures } = &mut st.twist {
                    if let Some(p) = punctures.iter_mut().find(|p| p.0 == b) {
                        *p = (new, p.1 + na);
                    }
                }
            }
            out.strata.insert([a, new].into(), Stratum { class: int(1), twist: TwistData::Torus { exponents: vec![] } });
        }
        out.strata.insert(
            [new].into(),
            Stratum { class: class_gm(), twist: TwistData::PuncturedLine { punctures: vec![(i, ni), (j, nj)] } },
        );
        if let Some(t) = &mut out.total_class {
            *t = t.clone() + EPoly::lefschetz();
        }
        Ok(out)
    }
}
