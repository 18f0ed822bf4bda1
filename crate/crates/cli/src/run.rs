//! Turns parsed arguments into a report.

use std::fmt;

use igusa_core::arc_oracle::{compare_series, twisted_tally_with, OracleError, OracleOptions};
use igusa_core::engine::{
    check_functional_equation, hodge_spectrum, homogeneous_zeta, motivic_zeta, padic_specialize, s_alpha_x_routes,
    topological_zeta_twisted, EngineError,
};
use igusa_core::mpoly::parse_polynomial;
use igusa_core::strata::{from_monomial, load_resolution, resolve_plane_curve, save_resolution, StrataError};
use igusa_core::{Character, QMPoly, RegionSpec, ResolutionData, ZetaFn};

use crate::report::{
    ComponentInfo, FunctionalEquationEntry, Input, MotivicEntry, PadicEntry, Report, SpectrumEntry, TopologicalEntry,
};
use crate::Args;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(String),
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Math(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl From<StrataError> for CliError {
    fn from(e: StrataError) -> Self {
        match e {
            StrataError::ResolutionBudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::RouteMismatch { .. } | EngineError::NotDivisible(_) => CliError::Math(e.to_string()),
            EngineError::Strata(s) => s.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            OracleError::Engine(inner) => inner.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn input(m: impl Into<String>) -> CliError {
    CliError::Input(m.into())
}

fn parse_region(args: &Args) -> Result<Option<RegionSpec>, CliError> {
    if args.at_origin {
        return Ok(Some(RegionSpec::Origin));
    }
    args.region.as_deref().map(|r| r.parse().map_err(|e: StrataError| input(e.to_string()))).transpose()
}

fn parse_characters(args: &Args) -> Result<Vec<Character>, CliError> {
    let mut out = Vec::new();
    for c in &args.characters {
        let a: Character = c.trim().parse().map_err(|e| input(format!("--characters: {e}")))?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Resolution data for a polynomial: the identity for monomials, the plane
/// curve resolver for curves.
fn resolve(f: &QMPoly, m: usize, region: RegionSpec) -> Result<ResolutionData, CliError> {
    if let Some((_, w)) = f.as_monomial() {
        return Ok(from_monomial(&w, m, region)?);
    }
    if m == 2 {
        return Ok(resolve_plane_curve(&f.with_nvars(2), region)?);
    }
    Err(input(format!("no resolution builder for a non-monomial polynomial in dimension {m}; supply --resolution")))
}

struct Source {
    f: Option<QMPoly>,
    m: usize,
    region: RegionSpec,
    toric: bool,
    /// Data for the chosen region, built on first use.
    data: Option<ResolutionData>,
}

impl Source {
    fn data(&mut self) -> Result<&ResolutionData, CliError> {
        if self.data.is_none() {
            let f = self.f.as_ref().expect("file input has data");
            self.data = Some(resolve(f, self.m, self.region)?);
        }
        Ok(self.data.as_ref().expect("just built"))
    }

    fn at(&self, region: RegionSpec) -> Result<ResolutionData, CliError> {
        match (&self.f, &self.data) {
            (_, Some(d)) if d.region == region => Ok(d.clone()),
            (Some(f), _) => resolve(f, self.m, region),
            (None, Some(d)) => Err(input(format!("the resolution file is over region {}, this needs {region}", d.region))),
            (None, None) => unreachable!("file input always has data"),
        }
    }
}

pub fn run(args: &Args) -> Result<Report, CliError> {
    let wants_output = args.motivic
        || args.topological
        || args.padic.is_some()
        || args.spectrum
        || args.check_functional_equation.is_some()
        || args.oracle
        || args.compare
        || args.emit_resolution;
    if !wants_output {
        return Err(input(
            "nothing to do: ask for at least one of --motivic, --topological, --padic, --spectrum, --check-functional-equation, --oracle, --compare, --emit-resolution",
        ));
    }
    let characters = parse_characters(args)?;
    let region = parse_region(args)?;
    let mut src = match (&args.poly, &args.resolution) {
        (Some(text), _) => {
            let f = parse_polynomial(text).map_err(|e| input(format!("--poly: {e}")))?;
            let m = args.dim.unwrap_or(f.nvars());
            if m < f.nvars() {
                return Err(input(format!("--dim {m} is smaller than the number of variables {}", f.nvars())));
            }
            let toric = f.as_monomial().is_some();
            let region = region.unwrap_or(if toric || (m == 2 && f.is_homogeneous()) { RegionSpec::Whole } else { RegionSpec::Origin });
            Source { f: Some(f), m, region, toric, data: None }
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let data = load_resolution(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            if region.is_some_and(|r| r != data.region) {
                return Err(input(format!("the resolution file is over region {}", data.region)));
            }
            if args.oracle || args.compare {
                return Err(input("--oracle and --compare need --poly"));
            }
            Source { f: None, m: data.dim, region: data.region, toric: false, data: Some(data) }
        }
        (None, None) => return Err(input("give --poly or --resolution")),
    };
    let mut report = Report::new(Input {
        polynomial: args.poly.clone(),
        resolution: args.resolution.as_ref().map(|p| p.display().to_string()),
        region: src.region.to_string(),
        dimension: src.m,
    });

    let needs_data = args.motivic || args.topological || args.padic.is_some() || args.compare || args.emit_resolution;
    if needs_data {
        let data = src.data()?;
        report.components = data
            .components
            .iter()
            .map(|c| ComponentInfo { id: c.id.clone(), n: c.n, nu: c.nu, exceptional: c.exceptional })
            .collect();
        if args.emit_resolution {
            report.resolution_file = Some(save_resolution(data));
        }
    }
    if args.motivic || args.padic.is_some() {
        let data = src.data()?.clone();
        for &a in &characters {
            let z = zeta_for(&data, a, args.check_functional_equation)?;
            if args.motivic {
                report.motivic.push(MotivicEntry { character: a, zeta: (&z).into(), text: z.to_string() });
            }
            if let Some(q) = args.padic {
                let p = padic_specialize(&z, q)?;
                report.padic.push(PadicEntry { character: a, text: p.to_string(), zeta: p });
            }
        }
    }
    if args.topological {
        let data = src.data()?;
        for &a in &characters {
            let z = topological_zeta_twisted(data, a)?;
            report.topological.push(TopologicalEntry { character: a, text: z.to_string(), zeta: z });
        }
    }
    if args.spectrum {
        let data = src.at(RegionSpec::Origin)?;
        let sp = hodge_spectrum(&data)?;
        let mut eigenparts = Vec::new();
        for d in (1..=data.lcm_n()).filter(|d| data.lcm_n() % d == 0) {
            for a in Character::of_order(d) {
                eigenparts.push(s_alpha_x_routes(&data, a)?);
            }
        }
        report.spectrum = Some(SpectrumEntry { text: sp.to_string(), spectrum: sp, eigenparts });
    }
    if let Some(r) = args.check_functional_equation {
        let data = match &src.f {
            Some(f) => {
                if !f.is_homogeneous() || f.total_degree() != Some(r as u32) {
                    return Err(input(format!("the functional equation needs a homogeneous polynomial of degree {r}")));
                }
                src.at(RegionSpec::Whole)?
            }
            None => src.data()?.clone(),
        };
        for &a in &characters {
            let z = zeta_for(&data, a, Some(r))?;
            let target = zeta_for(&data, a.inverse(), Some(r))?;
            let rep = check_functional_equation(&z, r, Some(&target));
            report.functional_equation.push(FunctionalEquationEntry { character: a, asserted: a.is_trivial() || src.toric, report: rep });
        }
    }
    let mut opts = OracleOptions::default();
    if let Some(b) = args.budget {
        opts.budget = b;
    }
    if args.oracle {
        let f = src.f.as_ref().expect("checked above");
        for n in 0..=args.depth {
            report.oracle.push(twisted_tally_with(f, src.m, args.q, args.d, n, src.region, &opts)?);
        }
    }
    if args.compare {
        let data = src.data()?.clone();
        let f = src.f.as_ref().expect("checked above");
        for &a in &characters {
            report.comparison.push(compare_series(&data, f, args.q, a, args.depth, &opts)?);
        }
    }
    Ok(report)
}

/// The zeta function at `alpha`: the homogeneous formula for projective
/// data (which needs the degree), the motivic formula otherwise.
fn zeta_for(data: &ResolutionData, alpha: Character, degree: Option<u64>) -> Result<ZetaFn, CliError> {
    if data.region == RegionSpec::Projective {
        let r = degree.ok_or_else(|| input("projective resolution data needs the degree, given by --check-functional-equation R"))?;
        return Ok(homogeneous_zeta(data, r, alpha)?);
    }
    Ok(motivic_zeta(data, alpha)?)
}
