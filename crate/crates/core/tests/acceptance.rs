//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use igusa_core::arc_oracle::{compare_series, count_jets, twisted_tally, OracleOptions};
use igusa_core::engine::{
    check_functional_equation, hodge_spectrum, homogeneous_zeta, motivic_zeta, s_alpha_x_routes, topological_zeta,
};
use igusa_core::strata::{from_monomial, projective_monomial, resolve_plane_curve};
use igusa_core::{Character, QPoly, RegionSpec, SpectrumPoly, TopoZeta};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Outcome = Result<(), String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ch(j: i64, d: u64) -> Character {
    Character::new(j, d).unwrap()
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

/// Monomials against the arc counts, both regions.
fn monomials() -> Outcome {
    let cases: [(&str, &[u32], usize); 4] = [("x", &[1], 1), ("x^2", &[2], 1), ("x*y", &[1, 1], 2), ("x^2*y^3", &[2, 3], 2)];
    let opts = OracleOptions::default();
    for (f, w, m) in cases {
        for region in [RegionSpec::Whole, RegionSpec::Origin] {
            let res = from_monomial(w, m, region).map_err(|e| e.to_string())?;
            for qq in [2, 3, 5] {
                let c = compare_series(&res, &common::poly(f), qq, Character::trivial(), 6, &opts).map_err(|e| e.to_string())?;
                if !c.passed {
                    return fail(format!("{f} over {region}, q = {qq}: {:?}", c.rows));
                }
            }
        }
    }
    // the closed-form counts against plain enumeration
    let enumerate = OracleOptions { force_enumeration: true, ..OracleOptions::default() };
    for (f, _, m) in cases {
        for n in 0..=4 {
            let a = count_jets(&common::poly(f), m, 2, n, RegionSpec::Whole).map_err(|e| e.to_string())?;
            let b = igusa_core::arc_oracle::twisted_tally_with(&common::poly(f), m, 2, 1, n, RegionSpec::Whole, &enumerate)
                .map_err(|e| e.to_string())?;
            if a.count != b.count {
                return fail(format!("{f}, n = {n}: closed form {} vs enumeration {}", a.count, b.count));
            }
        }
    }
    Ok(())
}

/// Character sums over the angular component against the twisted zeta.
fn twisted_toric() -> Outcome {
    let res = from_monomial(&[2], 1, RegionSpec::Whole).map_err(|e| e.to_string())?;
    let f = common::poly("x^2");
    for qq in [3, 5] {
        let c = compare_series(&res, &f, qq, ch(1, 2), 6, &OracleOptions::default()).map_err(|e| e.to_string())?;
        if !c.passed {
            return fail(format!("x^2 at 1/2, q = {qq}: {:?}", c.rows));
        }
    }
    let line = from_monomial(&[1], 1, RegionSpec::Whole).map_err(|e| e.to_string())?;
    if !motivic_zeta(&line, ch(1, 2)).map_err(|e| e.to_string())?.is_zero() {
        return fail("x at 1/2 has a nonzero twisted zeta function");
    }
    for qq in [3, 5] {
        for n in 0..=6 {
            let t = twisted_tally(&common::poly("x"), 1, qq, 2, n, RegionSpec::Whole).map_err(|e| e.to_string())?;
            if t.tallies[0] != t.tallies[1] {
                return fail(format!("x, q = {qq}, n = {n}: tallies {:?}", t.tallies));
            }
        }
    }
    Ok(())
}

/// Resolution, topological zeta and arc counts of the cusp.
fn cusp() -> Outcome {
    let f = common::poly("y^2 - x^3");
    let res = resolve_plane_curve(&f, RegionSpec::Origin).map_err(|e| e.to_string())?;
    let data: BTreeSet<(u64, u64)> = res.components.iter().map(|c| (c.n, c.nu)).collect();
    let want: BTreeSet<(u64, u64)> = [(2, 2), (3, 3), (6, 5), (1, 1)].into();
    if data != want || res.components.len() != 4 {
        return fail(format!("numerical data {data:?}"));
    }
    let e3 = res.components.iter().position(|c| (c.n, c.nu) == (6, 5)).unwrap();
    for (key, _) in res.strata.iter().filter(|(k, _)| k.len() == 2) {
        if !key.contains(&e3) {
            return fail(format!("components {} meet away from E3", res.stratum_name(key)));
        }
    }
    let pairs = res.strata.keys().filter(|k| k.len() == 2).count();
    if pairs != 3 {
        return fail(format!("E3 meets {pairs} components"));
    }
    if res != common::cusp_fixture() {
        return fail("the shipped fixture differs from the resolver output");
    }
    let z = topological_zeta(&res).map_err(|e| e.to_string())?;
    let expected = TopoZeta::new(QPoly::new(vec![q(5, 1), q(4, 1)]), &[(1, 1), (6, 5)]);
    if z != expected || z.to_string() != "(4s+5)/((s+1)(6s+5))" {
        return fail(format!("Z_top = {z}"));
    }
    let c = compare_series(&res, &f, 5, Character::trivial(), 4, &OracleOptions::default()).map_err(|e| e.to_string())?;
    if !c.passed {
        return fail(format!("q = 5: {:?}", c.rows));
    }
    Ok(())
}

fn quasi_homogeneous_spectrum(p: i64, r: i64) -> SpectrumPoly {
    let mut sp = SpectrumPoly::new();
    for i in 1..p {
        for j in 1..r {
            sp.add_term(q(i, p) + q(j, r), BigInt::one());
        }
    }
    sp
}

/// Spectra of two simple curve singularities, and the two routes to the
/// nearby-cycle eigenparts on every point germ.
fn spectra() -> Outcome {
    for (f, p, r) in [("y^2 - x^3", 2, 3), ("y^2 - x^5", 2, 5)] {
        let res = resolve_plane_curve(&common::poly(f), RegionSpec::Origin).map_err(|e| e.to_string())?;
        let sp = hodge_spectrum(&res).map_err(|e| e.to_string())?;
        if sp != quasi_homogeneous_spectrum(p, r) {
            return fail(format!("{f}: spectrum {sp}"));
        }
    }
    let cusp = hodge_spectrum(&common::cusp_fixture()).map_err(|e| e.to_string())?;
    if cusp.to_string() != "t^(5/6) + t^(7/6)" {
        return fail(format!("cusp fixture: {cusp}"));
    }
    for (name, res) in common::origin_fixtures() {
        let l = res.lcm_n();
        for d in (1..=l).filter(|d| l % d == 0) {
            for a in Character::of_order(d) {
                let routes = s_alpha_x_routes(&res, a).map_err(|e| format!("{name} at {a}: {e}"))?;
                if routes.ct_route != routes.closed_form {
                    return fail(format!("{name} at {a}: {} vs {}", routes.ct_route, routes.closed_form));
                }
            }
        }
    }
    Ok(())
}

fn functional_equation() -> Outcome {
    let mut cases = Vec::new();
    for a in 0..=8u32 {
        for b in 0..=8 - a {
            if a + b > 0 {
                cases.push((format!("x^{a} y^{b}"), from_monomial(&[a, b], 2, RegionSpec::Whole).map_err(|e| e.to_string())?, (a + b) as u64));
            }
        }
    }
    cases.push(("x^2 - y^2".into(), common::curve("x^2 - y^2", RegionSpec::Whole), 2));
    for (name, res, r) in &cases {
        let z = motivic_zeta(res, Character::trivial()).map_err(|e| e.to_string())?;
        let rep = check_functional_equation(&z, *r, None);
        if !rep.holds {
            return fail(format!("{name}: {:?}", rep.difference_text.or(rep.error)));
        }
    }
    let half = ch(1, 2);
    let line = from_monomial(&[2], 1, RegionSpec::Whole).map_err(|e| e.to_string())?;
    let z = motivic_zeta(&line, half).map_err(|e| e.to_string())?;
    let rep = check_functional_equation(&z, 2, Some(&motivic_zeta(&line, half.inverse()).map_err(|e| e.to_string())?));
    if !rep.holds || z.is_zero() {
        return fail(format!("x^2 at 1/2: {:?}", rep.difference_text.or(rep.error)));
    }
    let proj = projective_monomial(&[2]).map_err(|e| e.to_string())?;
    let h = homogeneous_zeta(&proj, 2, half).map_err(|e| e.to_string())?;
    if h != z {
        return fail(format!("homogeneous formula for x^2 at 1/2 gives {h}, the affine one {z}"));
    }
    Ok(())
}

fn properties() -> Outcome {
    for (name, test) in common::suite() {
        test().map_err(|e| format!("{name}: {e}"))?;
    }
    for (name, res) in common::all_fixtures() {
        common::ztop_at_zero(&res).map_err(|e| format!("{name}: {e}"))?;
    }
    for (name, res) in common::blowup_fixtures() {
        let i = (0..res.components.len()).find(|&i| res.strata.contains_key(&[i].into()));
        let i = match i {
            Some(i) => i,
            None => continue,
        };
        let b = res.blowup_free_point(i).map_err(|e| e.to_string())?;
        common::resolution_independence_single(&res, &b).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn ct_boundary() -> Outcome {
    if !common::bare_s_outside_ct() {
        return fail("S = L^(-s) has a constant term");
    }
    for (name, res) in common::origin_fixtures() {
        let l = res.lcm_n();
        for d in (1..=l).filter(|d| l % d == 0) {
            for a in Character::of_order(d) {
                let z = motivic_zeta(&res, a).map_err(|e| e.to_string())?;
                z.ct().map_err(|e| format!("{name} at {a}: {e}"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("monomial formula vs arc counts", monomials, Duration::from_secs(5)),
        ("twisted toric agreement", twisted_toric, Duration::from_secs(2)),
        ("cusp end to end", cusp, Duration::from_secs(30)),
        ("Hodge spectra", spectra, Duration::from_secs(10)),
        ("functional equation", functional_equation, Duration::from_secs(5)),
        ("property suites", properties, Duration::from_secs(60)),
        ("CT domain boundary", ct_boundary, Duration::from_secs(60)),
    ];
    let mut ok = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let line = match outcome {
            Ok(()) if took <= *limit => format!("PASS ({:.2} s)", took.as_secs_f64()),
            Ok(()) => format!("FAIL (took {:.2} s, limit {} s)", took.as_secs_f64(), limit.as_secs()),
            Err(e) => format!("FAIL ({e})"),
        };
        ok &= line.starts_with("PASS");
        println!("criterion {}: {line}  {name}", i + 1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
