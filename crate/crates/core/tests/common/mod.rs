//! Fixtures, generators and property checks shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use igusa_core::engine::{motivic_zeta, topological_zeta};
use igusa_core::kgroup::{class_gm, int};
use igusa_core::mpoly::parse_polynomial;
use igusa_core::strata::{
    cover_eigenclass_p1, from_monomial, load_resolution, resolve_plane_curve, twisted_class_torus,
};
use igusa_core::zeta::ZetaError;
use igusa_core::{Character, EPoly, Gate, RegionSpec, ResolutionData, SPoly, ZetaFn};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 256;

pub fn poly(s: &str) -> igusa_core::QMPoly {
    parse_polynomial(s).unwrap()
}

pub fn curve(s: &str, region: RegionSpec) -> ResolutionData {
    resolve_plane_curve(&poly(s).with_nvars(2), region).unwrap()
}

pub fn cusp_fixture() -> ResolutionData {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/cusp.toml");
    load_resolution(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Point germs at the origin: every one has an empty stratum over the empty
/// index set, so the nearby-cycle routes apply.
pub fn origin_fixtures() -> Vec<(String, ResolutionData)> {
    let mut out = vec![("cusp (file)".to_string(), cusp_fixture())];
    for f in ["y^2 - x^3", "y^2 - x^5", "y^3 - x^4", "y^2 - x^7", "x^2 - y^2", "x^3 - y^3", "y^2 - x^4"] {
        out.push((f.to_string(), curve(f, RegionSpec::Origin)));
    }
    for (name, w, m) in [("x", vec![1], 1), ("x^3", vec![3], 1), ("x*y", vec![1, 1], 2), ("x^2*y^3", vec![2, 3], 2), ("x", vec![1], 2)] {
        out.push((format!("{name} in dimension {m}"), from_monomial(&w, m, RegionSpec::Origin).unwrap()));
    }
    out
}

pub fn all_fixtures() -> Vec<(String, ResolutionData)> {
    let mut out = origin_fixtures();
    for f in ["x^2 - y^2", "x^3 - y^3"] {
        out.push((format!("{f} on the plane"), curve(f, RegionSpec::Whole)));
    }
    for (w, m) in [(vec![1], 1), (vec![2, 3], 2), (vec![1, 1, 2], 3), (vec![2], 2)] {
        out.push((format!("x^{w:?} on A^{m}"), from_monomial(&w, m, RegionSpec::Whole).unwrap()));
        out.push((format!("x^{w:?} on a hyperplane of A^{m}"), from_monomial(&w, m, RegionSpec::Hyperplane(0)).unwrap()));
    }
    out
}

/// Fixtures for the resolution-independence checks.
pub fn blowup_fixtures() -> Vec<(String, ResolutionData)> {
    vec![
        ("cusp".into(), cusp_fixture()),
        ("x*y".into(), from_monomial(&[1, 1], 2, RegionSpec::Origin).unwrap()),
        ("y^2 - x^5".into(), curve("y^2 - x^5", RegionSpec::Origin)),
    ]
}

// ---- generators ----

pub fn epoly(max_terms: usize, spread: i64) -> impl Strategy<Value = EPoly> {
    prop::collection::vec(((-spread..=spread, -spread..=spread), -6i64..=6), 0..=max_terms)
        .prop_map(|t| EPoly::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

pub fn tate(max_terms: usize) -> impl Strategy<Value = EPoly> {
    prop::collection::vec((-3i64..=3, -6i64..=6), 0..=max_terms)
        .prop_map(|t| EPoly::from_terms(t.into_iter().map(|(k, c)| ((k, k), BigInt::from(c)))))
}

pub fn gate() -> impl Strategy<Value = Gate> {
    (1u64..=4, 1u64..=4).prop_map(|(n, nu)| Gate::new(n, nu).unwrap())
}

/// A quotient whose numerator degree does not exceed the gate degree, so it
/// lies in the domain of both `dual` and `ct`.
pub fn zeta_in_domain() -> impl Strategy<Value = ZetaFn> {
    prop::collection::vec(gate(), 0..=3).prop_flat_map(|gates| {
        let deg: u64 = gates.iter().map(|g| g.s_degree).sum();
        prop::collection::vec(epoly(3, 2), 1..=deg as usize + 1)
            .prop_map(move |c| ZetaFn::new(SPoly::new(c), gates.clone()))
    })
}

pub fn character() -> impl Strategy<Value = Character> {
    (1u64..=6).prop_flat_map(|d| (0..d as i64).prop_map(move |j| Character::new(j, d).unwrap()))
}

/// Orders of the unit part at the punctures of a punctured line: a divisor
/// of degree zero.
pub fn punctures() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 0..=4).prop_map(|mut e| {
        let s: i64 = e.iter().sum();
        e.push(-s);
        e
    })
}

/// A short sequence of extra blowups: `(free?, index seeds)`.
pub fn blowup_plan() -> impl Strategy<Value = Vec<(bool, usize, usize)>> {
    prop::collection::vec((any::<bool>(), 0usize..64, 0usize..64), 1..=3)
}

/// Applies a plan, choosing among the components and crossings that are
/// available at each step.
pub fn apply_plan(res: &ResolutionData, plan: &[(bool, usize, usize)]) -> ResolutionData {
    let mut r = res.clone();
    for &(free, a, b) in plan {
        let singles: Vec<usize> = r.strata.keys().filter(|k| k.len() == 1).map(|k| *k.iter().next().unwrap()).collect();
        let pairs: Vec<(usize, usize)> = r
            .strata
            .iter()
            .filter(|(k, s)| k.len() == 2 && !s.class.is_zero())
            .map(|(k, _)| {
                let v: Vec<usize> = k.iter().copied().collect();
                (v[0], v[1])
            })
            .collect();
        r = if (free || pairs.is_empty()) && !singles.is_empty() {
            let i = singles[a % singles.len()];
            r.blowup_free_point(i).unwrap()
        } else {
            let (i, j) = pairs[(a + b) % pairs.len()];
            r.blowup_crossing(i, j).unwrap()
        };
    }
    r
}

// ---- runner ----

pub type Check = Result<(), TestCaseError>;

pub fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Check) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(proptest::test_runner::TestCaseError::fail(format!($($msg)+)));
        }
    };
}

// ---- kgroup ----

fn hsp_product(a: &BTreeMap<i64, BigInt>, b: &BTreeMap<i64, BigInt>) -> BTreeMap<i64, BigInt> {
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (p, x) in a {
        for (q, y) in b {
            *out.entry(p + q).or_default() += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn kgroup_laws((a, b, c): (EPoly, EPoly, EPoly)) -> Check {
    ensure!(a.clone() + b.clone() == b.clone() + a.clone(), "addition commutes");
    ensure!(&a * &b == &b * &a, "multiplication commutes");
    ensure!(&(&a * &b) * &c == &a * &(&b * &c), "multiplication associates");
    ensure!(&a * &(b.clone() + c.clone()) == &a * &b + &a * &c, "distributivity");
    ensure!(a.clone() - a.clone() == EPoly::zero(), "additive inverse");
    ensure!(&a * &EPoly::one() == a, "unit");
    ensure!(a.dual().dual() == a, "dual is an involution");
    ensure!((&a * &b).dual() == &a.dual() * &b.dual(), "dual is multiplicative");
    ensure!((a.clone() + b.clone()).dual() == a.dual() + b.dual(), "dual is additive");
    ensure!(a.dual().chi_top() == a.chi_top(), "chi_top of the dual");
    ensure!((&a * &b).chi_top() == a.chi_top() * b.chi_top(), "chi_top is multiplicative");
    ensure!((a.clone() + b.clone()).chi_top() == a.chi_top() + b.chi_top(), "chi_top is additive");
    ensure!((&a * &b).hsp_eval() == hsp_product(&a.hsp_eval(), &b.hsp_eval()), "hsp_eval is multiplicative");
    if !b.is_zero() {
        ensure!((&a * &b).div_exact(&b) == Some(a.clone()), "exact division recovers the factor");
    }
    Ok(())
}

pub fn tate_laws((a, b, q): (EPoly, EPoly, i64)) -> Check {
    let q = BigRational::from_integer(q.into());
    let ea = a.tate_eval(&q).unwrap();
    let eb = b.tate_eval(&q).unwrap();
    ensure!((&a * &b).tate_eval(&q).unwrap() == &ea * &eb, "tate_eval is multiplicative");
    ensure!((a.clone() + b.clone()).tate_eval(&q).unwrap() == ea + eb, "tate_eval is additive");
    ensure!(BigRational::from_integer(a.chi_top()) == a.tate_eval(&BigRational::one()).unwrap(), "chi_top is the value at 1");
    Ok(())
}

// ---- zeta ring ----

fn is_canonical(z: &ZetaFn) -> bool {
    let sorted = z.gates().windows(2).all(|w| w[0] <= w[1]);
    sorted
        && z.gates().iter().all(|g| {
            let lead_inv = -EPoly::lefschetz_pow(g.l_weight as i64);
            z.numerator().is_zero() || !z.numerator().div_rem_unit(&g.polynomial(), &lead_inv).1.is_zero()
        })
}

/// Multiplying numerator and denominator by the same gates changes neither
/// the value nor the canonical-form conditions, and normalizing twice is the
/// same as normalizing once.
pub fn normal_form((z, extra): (ZetaFn, Vec<Gate>)) -> Check {
    let num = extra.iter().fold(z.numerator().clone(), |acc, g| &acc * &g.polynomial());
    let mut gates = z.gates().to_vec();
    gates.extend(extra.iter().copied());
    let w = ZetaFn::new(num, gates);
    ensure!(w == z, "value changed: {z} vs {w}");
    ensure!(is_canonical(&w) && is_canonical(&z), "not canonical: {w}");
    let again = ZetaFn::new(w.numerator().clone(), w.gates().to_vec());
    ensure!(again.numerator() == w.numerator() && again.gates() == w.gates(), "normalizing is not idempotent on {w}");
    ensure!((z.clone() - w.clone()).is_zero(), "difference of equal values is not zero");
    Ok(())
}

pub fn ring_identities((a, b, c): (ZetaFn, ZetaFn, ZetaFn)) -> Check {
    let left = &(a.clone() + b.clone()) * &c;
    let right = &a * &c + &b * &c;
    ensure!(left == right && is_canonical(&left) && is_canonical(&right), "(a+b)c = ac+bc");
    ensure!(&(&a * &b) * &c == &a * &(&b * &c), "associativity");
    ensure!(&a * &b == &b * &a, "commutativity");
    ensure!((a.clone() + b.clone()) - b.clone() == a, "subtraction");
    Ok(())
}

pub fn dual_laws((a, b): (ZetaFn, ZetaFn)) -> Check {
    let da = a.dual().map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure!(da.dual().unwrap() == a, "dual is an involution on {a}");
    let db = b.dual().unwrap();
    ensure!((&a * &b).dual().unwrap() == &da * &db, "dual is multiplicative");
    Ok(())
}

pub fn ct_laws((a, b, g): (ZetaFn, ZetaFn, Gate)) -> Check {
    let (ca, cb) = (a.ct().unwrap(), b.ct().unwrap());
    ensure!((a.clone() + b.clone()).ct().unwrap() == ca.clone() + cb.clone(), "ct is additive");
    ensure!((&a * &b).ct().unwrap() == &ca * &cb, "ct is multiplicative");
    ensure!(ZetaFn::gate_series(g).ct().unwrap() == -EPoly::one(), "gate series goes to -1");
    ensure!(ZetaFn::from(ca.clone()).ct().unwrap() == ca, "classes are fixed");
    Ok(())
}

fn truncated_product(a: &[EPoly], b: &[EPoly]) -> Vec<EPoly> {
    (0..a.len()).map(|n| (0..=n).fold(EPoly::zero(), |acc, i| acc + &a[i] * &b[n - i])).collect()
}

pub fn series_laws((a, b, n): (ZetaFn, ZetaFn, usize)) -> Check {
    let (sa, sb) = (a.expand_series(n), b.expand_series(n));
    ensure!((&a * &b).expand_series(n) == truncated_product(&sa, &sb), "series of a product");
    let sum: Vec<EPoly> = sa.iter().zip(&sb).map(|(x, y)| x.clone() + y.clone()).collect();
    ensure!((a.clone() + b.clone()).expand_series(n) == sum, "series of a sum");
    let den = a.gates().iter().fold(SPoly::one(), |acc, g| &acc * &g.polynomial());
    let back = truncated_product(&sa, &(0..=n).map(|i| den.coeff(i)).collect::<Vec<_>>());
    let num: Vec<EPoly> = (0..=n).map(|i| a.numerator().coeff(i)).collect();
    ensure!(back == num, "series times the gate product gives the numerator");
    Ok(())
}

/// A bare power of `S` has no constant term.
pub fn bare_s_outside_ct() -> bool {
    matches!(ZetaFn::s_power(1).ct(), Err(ZetaError::NotInCtDomain { .. }))
}

// ---- strata ----

/// Class of the `mu_d` cover `w^d = u` of a projective line minus punctures
/// where `u` has the given orders, by Riemann-Hurwitz: `c0` components of
/// genus `g'`, one point over the `j`-th puncture per element of `gcd(d, e_j)`.
pub fn riemann_hurwitz_cover(e: &[i64], d: u64) -> EPoly {
    let d = d as i64;
    let c0 = e.iter().fold(d, |g, &x| g.gcd(&x));
    let deg = d / c0;
    let ramification: i64 = e.iter().map(|&x| deg - d.gcd(&x) / c0).sum();
    // 2 - 2g' = 2 deg - ramification
    let genus = (ramification - 2 * deg + 2) / 2;
    let removed: i64 = e.iter().map(|&x| d.gcd(&x)).sum();
    int(c0) * (EPoly::lefschetz() + int(1)) - int(c0 * genus) * (EPoly::u() + EPoly::v()) - int(removed)
}

pub fn reconstruction_punctured_line((e, d): (Vec<i64>, u64)) -> Check {
    let mut sum = EPoly::zero();
    for alpha in Character::all_dividing(d) {
        let c = cover_eigenclass_p1(&e, alpha).map_err(|x| TestCaseError::fail(x.to_string()))?;
        let k = e.len() as i64;
        ensure!(c.chi_top() == BigInt::from(2 - k), "Euler characteristic of the eigenpart at {alpha}");
        sum = sum + c;
    }
    let expected = riemann_hurwitz_cover(&e, d);
    ensure!(sum == expected, "eigenparts of {e:?} at d = {d} sum to {sum}, the cover has class {expected}");
    Ok(())
}

pub fn reconstruction_torus((w, extra, d): (Vec<i64>, u32, u64)) -> Check {
    let class = &class_gm().pow(w.len() as u32) * &EPoly::lefschetz_pow(extra as i64);
    let sum = Character::all_dividing(d).into_iter().fold(EPoly::zero(), |acc, a| acc + twisted_class_torus(&class, &w, a));
    let components = w.iter().fold(d as i64, |g, &x| g.gcd(&x));
    ensure!(sum == &int(components) * &class, "torus cover of {w:?} at d = {d}");
    Ok(())
}

/// Strata classes add up to the region after any sequence of extra blowups,
/// and twisted classes exist for every character.
pub fn additivity((i, plan): (usize, Vec<(bool, usize, usize)>)) -> Check {
    let fixtures = blowup_fixtures();
    let (name, res) = &fixtures[i % fixtures.len()];
    let r = apply_plan(res, plan.as_slice());
    r.check().map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
    let total = r.strata.values().fold(EPoly::zero(), |a, s| a + s.class.clone());
    // each extra blowup replaces a point by a projective line
    let expected = res.total_class.clone().unwrap() + &EPoly::lefschetz() * &int(plan.len() as i64);
    ensure!(total == expected, "{name}: strata sum to {total}, expected {expected}");
    for d in 1..=r.lcm_n().min(12) {
        if r.lcm_n() % d != 0 {
            continue;
        }
        for a in Character::of_order(d) {
            for key in r.strata.keys() {
                if r.in_j_d(key, d) {
                    r.twisted_class(key, a).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
                }
            }
        }
    }
    Ok(())
}

pub fn resolution_independence((i, plan): (usize, Vec<(bool, usize, usize)>)) -> Check {
    let fixtures = blowup_fixtures();
    let (name, res) = &fixtures[i % fixtures.len()];
    let r = apply_plan(res, plan.as_slice());
    ensure!(topological_zeta(&r).unwrap() == topological_zeta(res).unwrap(), "{name}: topological zeta moved under {plan:?}");
    let l = res.lcm_n();
    for d in (1..=l).filter(|d| l % d == 0) {
        for a in Character::of_order(d) {
            let before = motivic_zeta(res, a).unwrap();
            let after = motivic_zeta(&r, a).unwrap();
            ensure!(before == after, "{name} at {a}: {before} became {after} under {plan:?}");
        }
    }
    Ok(())
}

/// `Z_top(0)` is the Euler characteristic of the region.
pub fn ztop_at_zero(res: &ResolutionData) -> Result<(), String> {
    let z = topological_zeta(res).map_err(|e| e.to_string())?;
    let chi = res.region.class(res.dim).unwrap().chi_top();
    match z.eval(&BigRational::zero()) {
        Some(v) if v == BigRational::from_integer(chi.clone()) => Ok(()),
        other => Err(format!("Z_top(0) = {other:?}, chi_top = {chi}")),
    }
}

pub fn ztop_random_monomial((w, m, region): (Vec<u32>, usize, usize)) -> Check {
    let m = m.max(w.len());
    let region = match region % 3 {
        0 => RegionSpec::Whole,
        1 => RegionSpec::Origin,
        _ => RegionSpec::Hyperplane(region % m),
    };
    let res = match from_monomial(&w, m, region) {
        Ok(r) => r,
        Err(_) => return Ok(()),
    };
    ztop_at_zero(&res).map_err(TestCaseError::fail)
}

pub fn ztop_after_blowups((i, plan): (usize, Vec<(bool, usize, usize)>)) -> Check {
    let fixtures = blowup_fixtures();
    let (_, res) = &fixtures[i % fixtures.len()];
    ztop_at_zero(&apply_plan(res, plan.as_slice())).map_err(TestCaseError::fail)
}

// ---- strategies bundled with their checks ----

pub fn suite() -> Vec<(&'static str, Box<dyn Fn() -> Result<(), String>>)> {
    vec![
        ("kgroup ring and involution laws", Box::new(|| run((epoly(5, 3), epoly(5, 3), epoly(4, 3)), kgroup_laws))),
        ("kgroup Tate evaluation", Box::new(|| run((tate(4), tate(4), (-5i64..=7).prop_filter("nonzero", |q| *q != 0)), tate_laws))),
        ("zeta normal form", Box::new(|| run((zeta_in_domain(), prop::collection::vec(gate(), 1..=2)), normal_form))),
        ("zeta ring identities", Box::new(|| run((zeta_in_domain(), zeta_in_domain(), zeta_in_domain()), ring_identities))),
        ("zeta dual involution", Box::new(|| run((zeta_in_domain(), zeta_in_domain()), dual_laws))),
        ("ct homomorphism", Box::new(|| run((zeta_in_domain(), zeta_in_domain(), gate()), ct_laws))),
        ("series and rational form", Box::new(|| run((zeta_in_domain(), zeta_in_domain(), 0usize..8), series_laws))),
        ("punctured line reconstruction", Box::new(|| run((punctures(), 1u64..=12), reconstruction_punctured_line))),
        ("torus reconstruction", Box::new(|| run((prop::collection::vec(-8i64..=8, 0..=3), 0u32..=2, 1u64..=12), reconstruction_torus))),
        ("strata additivity", Box::new(|| run((0usize..3, blowup_plan()), additivity))),
        ("resolution independence", Box::new(|| run((0usize..3, blowup_plan()), resolution_independence))),
        ("Z_top(0) for monomials", Box::new(|| run((prop::collection::vec(0u32..=4, 1..=3), 1usize..=3, 0usize..6), ztop_random_monomial))),
        ("Z_top(0) after blowups", Box::new(|| run((0usize..3, blowup_plan()), ztop_after_blowups))),
    ]
}

/// Compares all zeta functions of two resolutions of the same germ.
pub fn resolution_independence_single(a: &ResolutionData, b: &ResolutionData) -> Result<(), String> {
    b.check().map_err(|e| e.to_string())?;
    if topological_zeta(a).unwrap() != topological_zeta(b).unwrap() {
        return Err("topological zeta functions differ".into());
    }
    let l = a.lcm_n();
    for d in (1..=l).filter(|d| l % d == 0) {
        for alpha in Character::of_order(d) {
            let (x, y) = (motivic_zeta(a, alpha).unwrap(), motivic_zeta(b, alpha).unwrap());
            if x != y {
                return Err(format!("at {alpha}: {x} vs {y}"));
            }
        }
    }
    Ok(())
}
