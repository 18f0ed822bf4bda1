//! Embedded resolution of plane curve germs by iterated point blowups, and
//! the whole-plane and projective data of homogeneous binary forms.
//!
//! A point under consideration is described in local coordinates `(x, y)`
//! centred at it: the square-free, pairwise coprime factors `g` of the strict
//! transform (each with the exponent `k` it carries in `f`), and the
//! exceptional curves through the point with local equation `x = 0` or
//! `y = 0`. Blowing up the point uses the charts `y = x y'` (the new curve is
//! `x = 0`) and `x = x' y` (its origin only, the new curve is `y = 0`).

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Component, RegionSpec, ResolutionData, StrataError, Stratum, StratumKey, TwistData};
use crate::kgroup::{class_gm, int};
use crate::mpoly::{squarefree_factors, translate, MPoly};
use crate::{EPoly, QMPoly, QPoly};

pub const DEFAULT_BLOWUP_CAP: usize = 64;

type Q2 = MPoly<BigRational>;

struct Local {
    factors: Vec<(Q2, u32)>,
    axis_x0: Option<usize>,
    axis_y0: Option<usize>,
}

struct Resolver {
    comps: Vec<Component>,
    /// Final intersection points: components through the point and the
    /// number of conjugate points the record stands for.
    points: Vec<(Vec<usize>, u64)>,
    blowups: usize,
    cap: usize,
}

/// `T(1, t)` for a form `T(x, y)` of degree `mu`.
fn dehomogenize(t: &Q2, mu: u32) -> QPoly {
    let mut c = vec![BigRational::zero(); mu as usize + 1];
    for (e, a) in t.terms() {
        c[e[1] as usize] = a.clone();
    }
    QPoly::new(c)
}

/// Whether a binary form of degree at most two is a product of distinct
/// lines.
fn distinct_lines(form: &Q2) -> bool {
    match form.total_degree() {
        Some(2) => {
            let (a, b, c) = (form.coeff(&[2, 0]), form.coeff(&[1, 1]), form.coeff(&[0, 2]));
            !(b.clone() * b - BigRational::from_integer(4.into()) * a * c).is_zero()
        }
        _ => true,
    }
}

impl Resolver {
    fn strict(&mut self, k: u32) -> usize {
        let n = self.comps.iter().filter(|c| !c.exceptional).count() + 1;
        self.comps.push(Component { id: format!("S{n}"), n: k as u64, nu: 1, exceptional: false });
        self.comps.len() - 1
    }

    fn process(&mut self, p: Local, root: bool) -> Result<(), StrataError> {
        let factors: Vec<(Q2, u32)> = p.factors.into_iter().filter(|(g, _)| g.coeff(&[0, 0]).is_zero()).collect();
        let axes: Vec<usize> = [p.axis_x0, p.axis_y0].into_iter().flatten().collect();
        let data: Vec<(&Q2, u32, u32, Q2)> = factors
            .iter()
            .map(|(g, k)| {
                let mu = g.order().expect("nonzero factor");
                (g, *k, mu, g.homogeneous_part(mu))
            })
            .collect();
        let slots = axes.len() + data.iter().map(|d| d.2 as usize).sum::<usize>();
        if slots <= 2 {
            let mut cone = MPoly::constant(BigRational::one(), 2);
            if p.axis_x0.is_some() {
                cone = &cone * &MPoly::var(0, 2);
            }
            if p.axis_y0.is_some() {
                cone = &cone * &MPoly::var(1, 2);
            }
            for d in &data {
                cone = &cone * &d.3;
            }
            if distinct_lines(&cone) {
                let mut comps = axes.clone();
                for d in &data {
                    for _ in 0..d.2 {
                        comps.push(self.strict(d.1));
                    }
                }
                if comps.len() >= 2 || root {
                    self.points.push((comps, 1));
                }
                return Ok(());
            }
        }

        if self.blowups == self.cap {
            return Err(StrataError::ResolutionBudgetExceeded(self.cap));
        }
        self.blowups += 1;
        let n_new = data.iter().map(|d| d.1 as u64 * d.2 as u64).sum::<u64>() + axes.iter().map(|&a| self.comps[a].n).sum::<u64>();
        let nu_new = 2 + axes.iter().map(|&a| self.comps[a].nu - 1).sum::<u64>();
        self.comps.push(Component { id: format!("E{}", self.blowups), n: n_new, nu: nu_new, exceptional: true });
        let e = self.comps.len() - 1;

        // Chart y = x y'.
        let chart_a: Vec<(Q2, u32)> = data
            .iter()
            .map(|&(g, k, mu, _)| (g.map_exponents(2, |ex| vec![ex[0] + ex[1] - mu, ex[1]]), k))
            .collect();
        let rows: Vec<QPoly> = data.iter().map(|d| dehomogenize(&d.3, d.2)).collect();
        let t = QPoly::new(vec![BigRational::zero(), BigRational::one()]);
        let mut h = rows.iter().fold(QPoly::one(), |a, r| &a * r);
        if p.axis_y0.is_some() {
            h = &h * &t;
        }
        let (_, parts) = h.squarefree_decomposition();
        for (j, part) in parts.iter().enumerate() {
            let rational = part.rational_roots();
            let mut irr = part.clone();
            for r in &rational {
                irr = irr.div_exact(&QPoly::new(vec![-r.clone(), BigRational::one()])).expect("root divides");
            }
            if irr.degree().unwrap_or(0) == 0 {
                continue;
            }
            if j > 0 {
                return Err(StrataError::Unsupported("infinitely near points with irrational coordinates".into()));
            }
            for (row, d) in rows.iter().zip(&data) {
                let count = irr.gcd(row).degree().unwrap_or(0) as u64;
                if count > 0 {
                    let s = self.strict(d.1);
                    self.points.push((vec![e, s], count));
                }
            }
        }
        for c in h.rational_roots() {
            let factors = chart_a.iter().map(|(g, k)| (translate(g, &BigRational::zero(), &c), *k)).collect();
            let axis_y0 = if c.is_zero() { p.axis_y0 } else { None };
            self.process(Local { factors, axis_x0: Some(e), axis_y0 }, false)?;
        }

        // Chart x = x' y, origin only.
        if p.axis_x0.is_some() || data.iter().any(|d| d.3.coeff(&[0, d.2]).is_zero()) {
            let factors = data.iter().map(|&(g, k, mu, _)| (g.map_exponents(2, |ex| vec![ex[0], ex[0] + ex[1] - mu]), k)).collect();
            self.process(Local { factors, axis_x0: p.axis_x0, axis_y0: Some(e) }, false)?;
        }
        Ok(())
    }
}

fn as_plane_curve(f: &QMPoly) -> Result<Q2, StrataError> {
    if f.is_zero() {
        return Err(StrataError::ZeroPolynomial);
    }
    match f.nvars() {
        1 => Ok(f.with_nvars(2)),
        2 => Ok(f.clone()),
        n => Err(StrataError::Unsupported(format!("the curve resolver needs a polynomial in x, y (got {n} variables)"))),
    }
}

/// Resolves the plane curve `f = 0` over the region (the origin, or the whole
/// plane for homogeneous `f`).
pub fn resolve_plane_curve(f: &QMPoly, region: RegionSpec) -> Result<ResolutionData, StrataError> {
    resolve_plane_curve_with_cap(f, region, DEFAULT_BLOWUP_CAP)
}

pub fn resolve_plane_curve_with_cap(f: &QMPoly, region: RegionSpec, cap: usize) -> Result<ResolutionData, StrataError> {
    let f = as_plane_curve(f)?;
    match region {
        RegionSpec::Origin => resolve_at_origin(&f, cap),
        RegionSpec::Whole => whole_plane_homogeneous(&f),
        other => Err(StrataError::Unsupported(format!("curve resolution over region {other}"))),
    }
}

fn resolve_at_origin(f: &Q2, cap: usize) -> Result<ResolutionData, StrataError> {
    if !f.coeff(&[0, 0]).is_zero() {
        return Err(StrataError::NotACurvePoint);
    }
    let mut r = Resolver { comps: Vec::new(), points: Vec::new(), blowups: 0, cap };
    let factors = squarefree_factors(f);
    r.process(Local { factors, axis_x0: None, axis_y0: None }, true)?;

    let mut strata: BTreeMap<StratumKey, Stratum> = BTreeMap::new();
    let add = |strata: &mut BTreeMap<StratumKey, Stratum>, key: StratumKey, class: EPoly, twist: TwistData| {
        strata
            .entry(key)
            .and_modify(|s| s.class = s.class.clone() + class.clone())
            .or_insert(Stratum { class, twist });
    };
    for (comps, w) in &r.points {
        add(&mut strata, comps.iter().copied().collect(), int(*w as i64), TwistData::Torus { exponents: vec![] });
    }
    let mut crossings = 0i64;
    for (i, c) in r.comps.iter().enumerate().filter(|(_, c)| c.exceptional) {
        let mut punctures = Vec::new();
        for (comps, w) in &r.points {
            if comps.contains(&i) {
                for &j in comps.iter().filter(|&&j| j != i) {
                    for _ in 0..*w {
                        punctures.push((j, r.comps[j].n as i64));
                    }
                    if r.comps[j].exceptional && j > i {
                        crossings += *w as i64;
                    }
                }
            }
        }
        let _ = c;
        let class = EPoly::lefschetz() + int(1) - int(punctures.len() as i64);
        add(&mut strata, [i].into(), class, TwistData::PuncturedLine { punctures });
    }
    let b = r.blowups as i64;
    let total = if b == 0 { EPoly::one() } else { int(b) * (EPoly::lefschetz() + int(1)) - int(crossings) };
    let res = ResolutionData { dim: 2, region: RegionSpec::Origin, components: r.comps, strata, total_class: Some(total) };
    res.check()?;
    Ok(res)
}

/// Square-free factors of a binary form with the number of lines each one
/// cuts out.
fn lines_of(f: &Q2) -> Result<Vec<(Q2, u32, u64)>, StrataError> {
    if !f.is_homogeneous() || f.order() == Some(0) {
        return Err(StrataError::Unsupported("whole-plane curve data needs a homogeneous polynomial of positive degree".into()));
    }
    Ok(squarefree_factors(f).into_iter().map(|(g, k)| {
        let e = g.total_degree().expect("nonzero") as u64;
        (g, k, e)
    }).collect())
}

fn whole_plane_homogeneous(f: &Q2) -> Result<ResolutionData, StrataError> {
    let lines = lines_of(f)?;
    let r = f.total_degree().expect("nonzero") as i64;
    let total_lines: u64 = lines.iter().map(|l| l.2).sum();
    let l = EPoly::lefschetz();
    let mut components = Vec::new();
    let mut strata = BTreeMap::new();
    let torus = |e: Vec<i64>| TwistData::Torus { exponents: e };
    if total_lines <= 2 {
        // Already normal crossings: one component per line.
        let mut ks = Vec::new();
        for &(_, k, e) in &lines {
            for _ in 0..e {
                components.push(Component { id: format!("S{}", components.len() + 1), n: k as u64, nu: 1, exceptional: false });
                ks.push(k as i64);
            }
        }
        if ks.len() == 1 {
            strata.insert(StratumKey::new(), Stratum { class: &l * &class_gm(), twist: torus(vec![ks[0]]) });
            strata.insert([0].into(), Stratum { class: l.clone(), twist: torus(vec![]) });
        } else {
            strata.insert(StratumKey::new(), Stratum { class: &class_gm() * &class_gm(), twist: torus(ks.clone()) });
            strata.insert([0].into(), Stratum { class: class_gm(), twist: torus(vec![ks[1]]) });
            strata.insert([1].into(), Stratum { class: class_gm(), twist: torus(vec![ks[0]]) });
            strata.insert([0, 1].into(), Stratum { class: int(1), twist: torus(vec![]) });
        }
        let res = ResolutionData { dim: 2, region: RegionSpec::Whole, components, strata, total_class: Some(&l * &l) };
        res.check()?;
        return Ok(res);
    }
    // One blowup at the origin separates the lines.
    components.push(Component { id: "E1".into(), n: r as u64, nu: 2, exceptional: true });
    let mut punctures = Vec::new();
    let mut orders = Vec::new();
    for &(_, k, e) in &lines {
        let i = components.len();
        components.push(Component { id: format!("S{i}"), n: k as u64, nu: 1, exceptional: false });
        strata.insert([i].into(), Stratum { class: int(e as i64) * class_gm(), twist: torus(vec![r - k as i64]) });
        strata.insert([0, i].into(), Stratum { class: int(e as i64), twist: torus(vec![]) });
        for _ in 0..e {
            punctures.push((i, k as i64));
            orders.push(k as i64);
        }
    }
    let open_line = l.clone() + int(1) - int(total_lines as i64);
    strata.insert([0].into(), Stratum { class: open_line.clone(), twist: TwistData::PuncturedLine { punctures } });
    strata.insert(
        StratumKey::new(),
        Stratum { class: &class_gm() * &open_line, twist: TwistData::TorusTimesLine { torus_exponent: r, punctures: orders } },
    );
    let res = ResolutionData { dim: 2, region: RegionSpec::Whole, components, strata, total_class: Some(&l * &l + l.clone()) };
    res.check()?;
    Ok(res)
}

/// Data of the points `f = 0` on the projective line, for a binary form `f`,
/// for the homogeneous formula.
pub fn projective_binary_form(f: &QMPoly) -> Result<ResolutionData, StrataError> {
    let f = as_plane_curve(f)?;
    let lines = lines_of(&f)?;
    let mut components = Vec::new();
    let mut strata = BTreeMap::new();
    let mut punctures = Vec::new();
    for (i, &(_, k, e)) in lines.iter().enumerate() {
        components.push(Component { id: format!("P{}", i + 1), n: k as u64, nu: 1, exceptional: false });
        strata.insert([i].into(), Stratum { class: int(e as i64), twist: TwistData::Torus { exponents: vec![] } });
        for _ in 0..e {
            punctures.push((i, k as i64));
        }
    }
    let open = EPoly::lefschetz() + int(1) - int(punctures.len() as i64);
    strata.insert(StratumKey::new(), Stratum { class: open, twist: TwistData::PuncturedLine { punctures } });
    let res = ResolutionData {
        dim: 2,
        region: RegionSpec::Projective,
        components,
        strata,
        total_class: Some(EPoly::lefschetz() + int(1)),
    };
    res.check()?;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_polynomial;

    fn resolve(s: &str) -> ResolutionData {
        resolve_plane_curve(&parse_polynomial(s).unwrap(), RegionSpec::Origin).unwrap()
    }

    fn data(r: &ResolutionData) -> Vec<(u64, u64)> {
        let mut v: Vec<_> = r.components.iter().map(|c| (c.n, c.nu)).collect();
        v.sort();
        v
    }

    fn meets(r: &ResolutionData, a: &str, b: &str) -> bool {
        let key: StratumKey = [r.component_index(a).unwrap(), r.component_index(b).unwrap()].into();
        r.strata.contains_key(&key)
    }

    #[test]
    fn cusp() {
        let r = resolve("y^2 - x^3");
        assert_eq!(data(&r), vec![(1, 1), (2, 2), (3, 3), (6, 5)]);
        let e3 = r.components.iter().find(|c| c.n == 6).unwrap().id.clone();
        for other in r.components.iter().filter(|c| c.n != 6) {
            assert!(meets(&r, &e3, &other.id));
        }
        assert_eq!(r.strata.keys().filter(|k| k.len() == 2).count(), 3);
    }

    #[test]
    fn smooth_and_normal_crossing_inputs_need_no_blowup() {
        let r = resolve("x");
        assert_eq!(data(&r), vec![(1, 1)]);
        assert_eq!(r.strata.len(), 1);
        let r = resolve("x*y");
        assert_eq!(data(&r), vec![(1, 1), (1, 1)]);
        assert_eq!(r.strata.keys().next().unwrap().len(), 2);
        let r = resolve("x^2 + y^2");
        assert_eq!(data(&r), vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn ordinary_triple_point() {
        let r = resolve("x^3 - y^3");
        assert_eq!(data(&r), vec![(1, 1), (1, 1), (3, 2)]);
        // The two conjugate lines are one cluster of two points.
        let e = r.component_index("E1").unwrap();
        assert_eq!(r.strata[&[e].into()].class, EPoly::lefschetz() - int(2));
    }

    #[test]
    fn higher_cusps_and_multiplicities() {
        assert_eq!(data(&resolve("y^2 - x^5")), vec![(1, 1), (2, 2), (4, 3), (5, 4), (10, 7)]);
        assert_eq!(data(&resolve("(y^2 - x^3)^2")), vec![(2, 1), (4, 2), (6, 3), (12, 5)]);
        assert_eq!(data(&resolve("y^3 - x^4")), vec![(1, 1), (3, 2), (4, 3), (8, 5), (12, 7)]);
    }

    #[test]
    fn errors() {
        let f = parse_polynomial("y - x^2 - 1").unwrap();
        assert_eq!(resolve_plane_curve(&f, RegionSpec::Origin), Err(StrataError::NotACurvePoint));
        let f = parse_polynomial("y^2 - x^101").unwrap();
        assert_eq!(resolve_plane_curve_with_cap(&f, RegionSpec::Origin, 5), Err(StrataError::ResolutionBudgetExceeded(5)));
        let f = parse_polynomial("x*y*z").unwrap();
        assert!(resolve_plane_curve(&f, RegionSpec::Origin).is_err());
    }

    #[test]
    fn whole_plane_forms() {
        let f = parse_polynomial("x^2 - y^2").unwrap();
        let r = resolve_plane_curve(&f, RegionSpec::Whole).unwrap();
        assert_eq!(data(&r), vec![(1, 1), (1, 1)]);
        let f = parse_polynomial("x*y*(x - y)").unwrap();
        let r = resolve_plane_curve(&f, RegionSpec::Whole).unwrap();
        assert_eq!(data(&r), vec![(1, 1), (3, 2)]);
        let f = parse_polynomial("y^2 - x^3").unwrap();
        assert!(resolve_plane_curve(&f, RegionSpec::Whole).is_err());
    }

    #[test]
    fn projective_points() {
        let f = parse_polynomial("x^2*y*(x^2 + y^2)").unwrap();
        let p = projective_binary_form(&f).unwrap();
        assert_eq!(p.strata[&StratumKey::new()].class, EPoly::lefschetz() - int(3));
    }
}
