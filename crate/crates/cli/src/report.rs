//! The report emitted by a run, in JSON and as text.

use std::fmt::{self, Write as _};

use igusa_core::arc_oracle::{ArcCountReport, SeriesComparison};
use igusa_core::engine::{FunctionalEquationReport, SAlphaRoutes};
use igusa_core::zeta::ZetaJson;
use igusa_core::{Character, PadicZeta, SpectrumPoly, TopoZeta};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "igusa-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub input: Input,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution_file: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub motivic: Vec<MotivicEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub topological: Vec<TopologicalEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub padic: Vec<PadicEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functional_equation: Vec<FunctionalEquationEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub oracle: Vec<ArcCountReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comparison: Vec<SeriesComparison>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Input {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<String>,
    pub region: String,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub id: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub nu: u64,
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MotivicEntry {
    pub character: Character,
    pub zeta: ZetaJson,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologicalEntry {
    pub character: Character,
    pub zeta: TopoZeta,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PadicEntry {
    pub character: Character,
    pub zeta: PadicZeta,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub spectrum: SpectrumPoly,
    pub text: String,
    pub eigenparts: Vec<SAlphaRoutes>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalEquationEntry {
    pub character: Character,
    /// Whether a failure counts as a mathematical error; identities for
    /// nontrivial characters outside the toric case are only reported.
    pub asserted: bool,
    pub report: FunctionalEquationReport,
}

impl Report {
    pub fn new(input: Input) -> Self {
        Report {
            schema: SCHEMA.into(),
            input,
            components: Vec::new(),
            resolution_file: None,
            motivic: Vec::new(),
            topological: Vec::new(),
            padic: Vec::new(),
            spectrum: None,
            functional_equation: Vec::new(),
            oracle: Vec::new(),
            comparison: Vec::new(),
        }
    }

    /// True when an asserted identity failed.
    pub fn has_failures(&self) -> bool {
        self.functional_equation.iter().any(|e| e.asserted && !e.report.holds) || self.comparison.iter().any(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match (&self.input.polynomial, &self.input.resolution) {
            (Some(p), _) => writeln!(out, "f = {p}")?,
            (None, Some(r)) => writeln!(out, "resolution file {r}")?,
            _ => {}
        }
        writeln!(out, "region {}, dimension {}", self.input.region, self.input.dimension)?;
        if !self.components.is_empty() {
            writeln!(out, "\ncomponents (N, nu):")?;
            for c in &self.components {
                let kind = if c.exceptional { "exceptional" } else { "strict" };
                writeln!(out, "  {:<4} ({}, {})  {kind}", c.id, c.n, c.nu)?;
            }
        }
        if let Some(text) = &self.resolution_file {
            writeln!(out, "\n{}", text.trim_end())?;
        }
        if !self.motivic.is_empty() {
            writeln!(out, "\nmotivic zeta function:")?;
            for e in &self.motivic {
                writeln!(out, "  [{}] {}", e.character, e.text)?;
            }
        }
        if !self.topological.is_empty() {
            writeln!(out, "\ntopological zeta function:")?;
            for e in &self.topological {
                writeln!(out, "  [{}] {}", e.character, e.text)?;
            }
        }
        if !self.padic.is_empty() {
            writeln!(out, "\np-adic zeta function (T = q^(-s)):")?;
            for e in &self.padic {
                writeln!(out, "  [{}] q = {}: {}", e.character, e.zeta.q, e.text)?;
            }
        }
        if let Some(s) = &self.spectrum {
            writeln!(out, "\nHodge spectrum: {}", s.text)?;
            for r in &s.eigenparts {
                writeln!(out, "  S[{}] = {}", r.character, r.closed_form)?;
            }
        }
        if !self.functional_equation.is_empty() {
            writeln!(out, "\nfunctional equation:")?;
            for e in &self.functional_equation {
                let verdict = if e.report.holds { "holds" } else { "FAILS" };
                let note = if e.asserted { "" } else { " (reported only)" };
                writeln!(out, "  [{}] degree {}: {verdict}{note}", e.character, e.report.degree)?;
                if let Some(d) = &e.report.difference_text {
                    writeln!(out, "    difference: {d}")?;
                }
                if let Some(err) = &e.report.error {
                    writeln!(out, "    {err}")?;
                }
            }
        }
        if !self.oracle.is_empty() {
            let first = &self.oracle[0];
            writeln!(out, "\narc counts over F_{} (generator {}):", first.q, first.generator)?;
            for r in &self.oracle {
                let t: Vec<String> = r.tallies.iter().map(|t| t.to_string()).collect();
                writeln!(out, "  n = {}: {} arcs, tallies [{}]", r.n, r.count, t.join(", "))?;
            }
        }
        for c in &self.comparison {
            let verdict = if c.passed { "agree" } else { "DISAGREE" };
            writeln!(out, "\nseries vs oracle, q = {}, character {}: {verdict}", c.q, c.character)?;
            for r in &c.rows {
                let res = if r.residual.is_empty() { "0".to_string() } else { format!("[{}]", r.residual.join(", ")) };
                writeln!(out, "  n = {}: symbolic {}, arcs {}, residual {res}", r.n, r.symbolic, r.count)?;
            }
        }
        f.write_str(&out)
    }
}
