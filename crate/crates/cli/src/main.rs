//! `igusa`: zeta functions, spectra and arc counts from the command line.
//!
//! Exit status: 0 on success, 1 when an asserted identity fails, 2 on input
//! errors, 3 when a budget is exhausted.

mod report;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "igusa", version, about = "Exact motivic Igusa zeta functions")]
pub struct Args {
    /// Polynomial in x, y, z, w, e.g. "y^2 - x^3" (explicit `*` between factors).
    #[arg(long, conflicts_with = "resolution", required_unless_present = "resolution")]
    pub poly: Option<String>,

    /// Resolution data file (TOML, see the README).
    #[arg(long, value_name = "FILE")]
    pub resolution: Option<PathBuf>,

    /// Work at the origin (same as --region origin).
    #[arg(long, conflicts_with = "region")]
    pub at_origin: bool,

    /// all, origin or hyperplane:<i>. Defaults to all for monomials and
    /// homogeneous curves, origin otherwise.
    #[arg(long)]
    pub region: Option<String>,

    /// Ambient dimension, when larger than the number of variables of the polynomial.
    #[arg(long)]
    pub dim: Option<usize>,

    /// Characters as j/d, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub characters: Vec<String>,

    /// Motivic zeta function.
    #[arg(long)]
    pub motivic: bool,

    /// Topological zeta function.
    #[arg(long)]
    pub topological: bool,

    /// p-adic zeta function for residue field size Q.
    #[arg(long, value_name = "Q")]
    pub padic: Option<u64>,

    /// Hodge spectrum at the origin.
    #[arg(long)]
    pub spectrum: bool,

    /// Check the functional equation for a homogeneous polynomial of degree R.
    #[arg(long, value_name = "R")]
    pub check_functional_equation: Option<u64>,

    /// Count arcs of the polynomial over F_q for n = 0..=depth.
    #[arg(long)]
    pub oracle: bool,

    /// Compare the series of the zeta function with the arc counts.
    #[arg(long)]
    pub compare: bool,

    /// Field size for --oracle and --compare.
    #[arg(long, default_value_t = 5)]
    pub q: u64,

    /// Tally modulus for --oracle; must divide q - 1.
    #[arg(long, default_value_t = 1)]
    pub d: u64,

    /// Largest arc order for --oracle and --compare.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,

    /// Enumeration budget in nodes (overrides IGUSA_BUDGET).
    #[arg(long)]
    pub budget: Option<u64>,

    /// Print the resolution data in the file format.
    #[arg(long)]
    pub emit_resolution: bool,

    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run::run(&args) {
        Ok(report) => {
            let text = match args.format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Text => report.to_string(),
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.has_failures() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
