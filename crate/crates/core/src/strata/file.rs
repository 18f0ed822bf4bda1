//! Resolution files: TOML with a versioned header, one `[[component]]` table
//! per component and one `[[stratum]]` table per stratum.
//!
//! ```toml
//! format = "igusa-resolution"
//! version = 1
//! dimension = 2
//! region = "origin"          # all | origin | hyperplane:<i> | projective
//! total_class = "3*L + 1"    # optional: class of h^-1(W), checked if present
//!
//! [[component]]
//! id = "E1"
//! N = 2
//! nu = 2
//! exceptional = true
//!
//! [[stratum]]
//! components = ["E1"]
//! class = "L"
//! twist = { kind = "punctured-line", punctures = [["E3", 6]] }
//! ```
//!
//! Twist kinds: `untwisted` (the default), `torus` with `exponents`,
//! `punctured-line` with `punctures` as `[component, order]` pairs,
//! `torus-times-line` with `torus_exponent` and `punctures` (orders only),
//! and `explicit` with `classes`, a table from characters `"j/d"` to classes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Component, RegionSpec, ResolutionData, StrataError, Stratum, StratumKey, TwistData};
use crate::kgroup::Character;
use crate::EPoly;

const FORMAT: &str = "igusa-resolution";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    format: String,
    version: u32,
    dimension: usize,
    region: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    total_class: Option<String>,
    #[serde(default, rename = "component")]
    components: Vec<ComponentRepr>,
    #[serde(default, rename = "stratum")]
    strata: Vec<StratumRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentRepr {
    id: String,
    #[serde(rename = "N")]
    n: u64,
    nu: u64,
    #[serde(default)]
    exceptional: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StratumRepr {
    components: Vec<String>,
    class: String,
    #[serde(default)]
    twist: TwistRepr,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum TwistRepr {
    #[default]
    Untwisted,
    Torus {
        exponents: Vec<i64>,
    },
    PuncturedLine {
        punctures: Vec<(String, i64)>,
    },
    TorusTimesLine {
        torus_exponent: i64,
        punctures: Vec<i64>,
    },
    Explicit {
        classes: BTreeMap<String, String>,
    },
}

fn parse_class(s: &str, what: &str) -> Result<EPoly, StrataError> {
    s.parse().map_err(|e| StrataError::Parse(format!("{what}: {e}")))
}

/// Parses and validates a resolution file.
pub fn load_resolution(text: &str) -> Result<ResolutionData, StrataError> {
    let repr: FileRepr = toml::from_str(text).map_err(|e| StrataError::Parse(e.to_string()))?;
    if repr.format != FORMAT {
        return Err(StrataError::Parse(format!("format must be \"{FORMAT}\", found \"{}\"", repr.format)));
    }
    if repr.version != VERSION {
        return Err(StrataError::Parse(format!("unsupported version {}", repr.version)));
    }
    let region: RegionSpec = repr.region.parse()?;
    let components: Vec<Component> = repr
        .components
        .into_iter()
        .map(|c| Component { id: c.id, n: c.n, nu: c.nu, exceptional: c.exceptional })
        .collect();
    let index = |id: &str, at: usize| {
        components
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| StrataError::Parse(format!("stratum {at}: unknown component `{id}`")))
    };
    let mut strata = BTreeMap::new();
    for (at, s) in repr.strata.into_iter().enumerate() {
        let at = at + 1;
        let key: StratumKey = s.components.iter().map(|id| index(id, at)).collect::<Result<_, _>>()?;
        let class = parse_class(&s.class, &format!("stratum {at}, field class"))?;
        let twist = match s.twist {
            TwistRepr::Untwisted => TwistData::Untwisted,
            TwistRepr::Torus { exponents } => TwistData::Torus { exponents },
            TwistRepr::PuncturedLine { punctures } => TwistData::PuncturedLine {
                punctures: punctures.iter().map(|(id, e)| Ok((index(id, at)?, *e))).collect::<Result<_, StrataError>>()?,
            },
            TwistRepr::TorusTimesLine { torus_exponent, punctures } => TwistData::TorusTimesLine { torus_exponent, punctures },
            TwistRepr::Explicit { classes } => {
                let mut map = BTreeMap::new();
                for (ch, cl) in classes {
                    let alpha: Character = ch.parse().map_err(|e| StrataError::Parse(format!("stratum {at}: {e}")))?;
                    map.insert(alpha, parse_class(&cl, &format!("stratum {at}, twist class {ch}"))?);
                }
                TwistData::Explicit(map)
            }
        };
        if strata.insert(key, Stratum { class, twist }).is_some() {
            return Err(StrataError::Parse(format!("stratum {at}: duplicate component set")));
        }
    }
    let total_class = repr.total_class.as_deref().map(|s| parse_class(s, "total_class")).transpose()?;
    let res = ResolutionData { dim: repr.dimension, region, components, strata, total_class };
    res.check()?;
    Ok(res)
}

/// Writes resolution data in the file format read by [`load_resolution`].
pub fn save_resolution(r: &ResolutionData) -> String {
    let id = |i: usize| r.components[i].id.clone();
    let repr = FileRepr {
        format: FORMAT.into(),
        version: VERSION,
        dimension: r.dim,
        region: r.region.to_string(),
        total_class: r.total_class.as_ref().map(|c| c.to_string()),
        components: r
            .components
            .iter()
            .map(|c| ComponentRepr { id: c.id.clone(), n: c.n, nu: c.nu, exceptional: c.exceptional })
            .collect(),
        strata: r
            .strata
            .iter()
            .map(|(key, s)| StratumRepr {
                components: key.iter().map(|&i| id(i)).collect(),
                class: s.class.to_string(),
                twist: match &s.twist {
                    TwistData::Untwisted => TwistRepr::Untwisted,
                    TwistData::Torus { exponents } => TwistRepr::Torus { exponents: exponents.clone() },
                    TwistData::PuncturedLine { punctures } => {
                        TwistRepr::PuncturedLine { punctures: punctures.iter().map(|&(j, e)| (id(j), e)).collect() }
                    }
                    TwistData::TorusTimesLine { torus_exponent, punctures } => {
                        TwistRepr::TorusTimesLine { torus_exponent: *torus_exponent, punctures: punctures.clone() }
                    }
                    TwistData::Explicit(map) => {
                        TwistRepr::Explicit { classes: map.iter().map(|(a, c)| (a.to_string(), c.to_string())).collect() }
                    }
                },
            })
            .collect(),
    };
    toml::to_string(&repr).expect("resolution data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_polynomial;
    use crate::strata::{from_monomial, resolve_plane_curve};

    #[test]
    fn monomial_round_trip() {
        let r = from_monomial(&[1, 1], 2, RegionSpec::Whole).unwrap();
        assert_eq!(load_resolution(&save_resolution(&r)).unwrap(), r);
    }

    #[test]
    fn cusp_round_trip() {
        let r = resolve_plane_curve(&parse_polynomial("y^2 - x^3").unwrap(), RegionSpec::Origin).unwrap();
        let text = save_resolution(&r);
        assert_eq!(load_resolution(&text).unwrap(), r);
    }

    #[test]
    fn rejects_zero_nu() {
        let text = r#"
format = "igusa-resolution"
version = 1
dimension = 1
region = "all"

[[component]]
id = "x"
N = 1
nu = 0
"#;
        assert!(matches!(load_resolution(text), Err(StrataError::InvariantViolation(_))));
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let text = "format = \"igusa-resolution\"\nversion = 1\ndimension = 1\nregion = \"all\"\n[[stratum]]\ncomponents = [\"q\"]\nclass = \"1\"\n";
        let e = load_resolution(text).unwrap_err().to_string();
        assert!(e.contains("unknown component `q`"), "{e}");
        let e = load_resolution("format = \"igusa-resolution\"\nversion = 1\ndimension = \"two\"\n").unwrap_err().to_string();
        assert!(e.contains("line 3"), "{e}");
    }

    #[test]
    fn explicit_twists() {
        let text = r#"
format = "igusa-resolution"
version = 1
dimension = 1
region = "all"

[[component]]
id = "x"
N = 2
nu = 1

[[stratum]]
components = []
class = "L - 1"
twist = { kind = "explicit", classes = { "0" = "L - 1", "1/2" = "L - 1" } }

[[stratum]]
components = ["x"]
class = "1"
twist = { kind = "torus", exponents = [] }
"#;
        let r = load_resolution(text).unwrap();
        let half = Character::new(1, 2).unwrap();
        assert_eq!(r.twisted_class(&StratumKey::new(), half).unwrap(), crate::kgroup::class_gm());
    }
}
