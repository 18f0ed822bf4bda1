//! Brute-force ground truth: counts of truncated arcs over small finite
//! fields, with tallies of the angular component by discrete logarithm.
//!
//! `X_n` is the set of `m`-tuples of series modulo `t^{n+1}` with constant
//! terms in the region and `ord_t f(phi) = n`. Its angular component is the
//! coefficient of `t^n` in `f(phi)`. Nothing here reads resolution data except
//! [`compare_series`], which puts the two sides next to each other.

mod enumerate;
mod field;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{motivic_zeta, EngineError};
use crate::kgroup::Character;
use crate::strata::{RegionSpec, ResolutionData};
use crate::{QMPoly, QPoly};

use enumerate::{FieldPoly, Job, Target};
pub use field::SmallField;

/// Default cap on enumeration nodes (one node per prefix extended by one
/// `t`-degree).
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "IGUSA_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("q = {0} is not a prime power up to 256")]
    UnsupportedField(u64),
    #[error("{0} is not a primitive element")]
    NotPrimitive(u8),
    #[error("character order {d} does not divide q - 1 = {}", q - 1)]
    NotDividing { d: u64, q: u64 },
    #[error("a coefficient of f has a denominator divisible by {p}")]
    BadReduction { p: u64 },
    #[error("enumeration budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("f has {nvars} variables but the ambient dimension is {m}")]
    TooManyVariables { nvars: usize, m: usize },
    #[error("region {0} cannot be enumerated")]
    Region(RegionSpec),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub budget: u64,
    /// Enumerate even when a closed form applies.
    pub force_enumeration: bool,
    /// Primitive element for discrete logarithms; the smallest one if unset.
    pub generator: Option<u8>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        let budget = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET);
        OracleOptions { budget, force_enumeration: false, generator: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    ClosedForm,
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcCountReport {
    pub q: u64,
    pub n: usize,
    pub region: String,
    pub generator: u8,
    /// `|X_n(F_q)|`.
    pub count: u128,
    /// `tallies[k]` counts arcs whose angular component has discrete
    /// logarithm `k` modulo `tallies.len()`.
    pub tallies: Vec<u128>,
    pub method: CountMethod,
}

fn pinned(region: RegionSpec, m: usize) -> Result<Vec<bool>, OracleError> {
    match region {
        RegionSpec::Whole => Ok(vec![false; m]),
        RegionSpec::Origin => Ok(vec![true; m]),
        RegionSpec::Hyperplane(h) if h < m => Ok((0..m).map(|i| i == h).collect()),
        other => Err(OracleError::Region(other)),
    }
}

fn reduce(f: &QMPoly, m: usize, field: &SmallField) -> Result<FieldPoly, OracleError> {
    if f.nvars() > m {
        return Err(OracleError::TooManyVariables { nvars: f.nvars(), m });
    }
    let p = BigInt::from(field.characteristic());
    let to_fp = |n: &BigInt| field.from_int(n.mod_floor(&p).to_i64().expect("below p"));
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        let den = to_fp(c.denom());
        let inv = field.inverse(den).ok_or(OracleError::BadReduction { p: field.characteristic() as u64 })?;
        let c = field.mul(to_fp(c.numer()), inv);
        if c == 0 {
            continue;
        }
        let factors = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k)).collect();
        terms.push((c, factors));
    }
    Ok(FieldPoly { nvars: m, terms })
}

fn setup(q: u64, d: u64, opts: &OracleOptions) -> Result<SmallField, OracleError> {
    let mut field = SmallField::new(q)?;
    if d == 0 || (q - 1) % d != 0 {
        return Err(OracleError::NotDividing { d, q });
    }
    if let Some(g) = opts.generator {
        field.set_generator(g)?;
    }
    Ok(field)
}

/// `|X_n(F_q)|` for `f` in `m` variables over the region.
pub fn count_jets(f: &QMPoly, m: usize, q: u64, n: usize, region: RegionSpec) -> Result<ArcCountReport, OracleError> {
    twisted_tally_with(f, m, q, 1, n, region, &OracleOptions::default())
}

/// Tallies of `X_n(F_q)` by the discrete logarithm of the angular component
/// modulo `d`, where `d` divides `q - 1`.
pub fn twisted_tally(f: &QMPoly, m: usize, q: u64, d: u64, n: usize, region: RegionSpec) -> Result<ArcCountReport, OracleError> {
    twisted_tally_with(f, m, q, d, n, region, &OracleOptions::default())
}

pub fn twisted_tally_with(
    f: &QMPoly,
    m: usize,
    q: u64,
    d: u64,
    n: usize,
    region: RegionSpec,
    opts: &OracleOptions,
) -> Result<ArcCountReport, OracleError> {
    let field = setup(q, d, opts)?;
    let fp = reduce(f, m, &field)?;
    let pins = pinned(region, m)?;
    let (tallies, method) = if fp.terms.len() == 1 && !opts.force_enumeration {
        (monomial_tallies(&field, &fp, &pins, n, d as usize), CountMethod::ClosedForm)
    } else {
        let job = Job { field: &field, f: &fp, pinned: pins, n, d: d as usize, target: Target::Exact, budget: opts.budget };
        (enumerate::run(&job)?, CountMethod::Enumeration)
    };
    Ok(ArcCountReport {
        q,
        n,
        region: region.to_string(),
        generator: field.generator(),
        count: tallies.iter().sum(),
        tallies,
        method,
    })
}

/// Number of jets modulo `t^{n+1}` over the region with `f(phi) = 0 mod t^{n+1}`.
pub fn count_vanishing(f: &QMPoly, m: usize, q: u64, n: usize, region: RegionSpec, opts: &OracleOptions) -> Result<u128, OracleError> {
    let field = setup(q, 1, opts)?;
    let fp = reduce(f, m, &field)?;
    let pins = pinned(region, m)?;
    let job = Job { field: &field, f: &fp, pinned: pins, n, d: 1, target: Target::Vanishing, budget: opts.budget };
    Ok(enumerate::run(&job)?[0])
}

/// Closed form for `c x^w`: a variable of order `o <= n` has `(q-1) q^{n-o}`
/// jets, the orders must satisfy `sum w_i o_i = n`, and the angular component
/// is `c prod lead_i^{w_i}` with independent uniform leading coefficients.
fn monomial_tallies(field: &SmallField, f: &FieldPoly, pins: &[bool], n: usize, d: usize) -> Vec<u128> {
    let q = field.order() as u128;
    let (c, factors) = &f.terms[0];
    let mut free_weight = 1u128;
    for i in 0..f.nvars {
        if factors.iter().all(|&(j, _)| j != i) {
            free_weight *= q.pow(if pins[i] { n as u32 } else { n as u32 + 1 });
        }
    }
    // sum over order vectors with sum w_i o_i = n of prod q^{n - o_i}
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    for &(i, w) in factors {
        let lo = usize::from(pins[i]);
        let mut next = vec![0u128; n + 1];
        for (s, &cnt) in ways.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for o in lo..=n {
                let t = s + w as usize * o;
                if t > n {
                    break;
                }
                next[t] += cnt * q.pow((n - o) as u32);
            }
        }
        ways = next;
    }
    let total = ways[n] * free_weight;
    // distribution of the discrete log of the angular component modulo d
    let mut dist = vec![0u128; d];
    dist[field.log(*c) as usize % d] = 1;
    for &(_, w) in factors {
        let mut next = vec![0u128; d];
        for (r, &cnt) in dist.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            for k in 0..field.order() - 1 {
                next[(r + w as usize * k) % d] += cnt;
            }
        }
        dist = next;
    }
    if factors.is_empty() && n > 0 {
        return vec![0; d];
    }
    dist.iter().map(|&x| x * total).collect()
}

/// The cyclotomic polynomial `Phi_e` over the rationals.
fn cyclotomic(e: u64) -> QPoly {
    let mut num = QPoly::monomial(BigRational::one(), e as usize) - QPoly::one();
    for k in 1..e {
        if e % k == 0 {
            num = num.div_exact(&cyclotomic(k)).expect("x^e - 1 factors into cyclotomic polynomials");
        }
    }
    num
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub n: usize,
    /// `q^{(n+1)m}` times the coefficient of `S^n`, evaluated at `L = q`.
    pub symbolic: String,
    pub count: u128,
    pub tallies: Vec<u128>,
    /// Coefficients of `sum_k tallies[k] zeta^{jk} - symbolic` reduced
    /// modulo the cyclotomic polynomial; empty when the two sides agree.
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesComparison {
    pub q: u64,
    pub character: Character,
    pub region: String,
    pub rows: Vec<SeriesRow>,
    pub passed: bool,
}

/// Compares `q^{(n+1)m}` times the `S^n`-coefficient of `Z(s, alpha)`,
/// evaluated at `L = q`, with the oracle for every `n <= n_max`: the arc
/// count for trivial `alpha`, and otherwise the character sum
/// `sum_k tallies[k] zeta_e^{jk}` for `alpha = j/e`, compared exactly in
/// `Q(zeta_e)`. The symbolic side must be Tate.
pub fn compare_series(
    res: &ResolutionData,
    f: &QMPoly,
    q: u64,
    alpha: Character,
    n_max: usize,
    opts: &OracleOptions,
) -> Result<SeriesComparison, OracleError> {
    let e = alpha.order();
    if (q - 1) % e != 0 {
        return Err(OracleError::NotDividing { d: e, q });
    }
    let z = motivic_zeta(res, alpha)?;
    let coeffs = z.expand_series(n_max);
    let qr = BigRational::from_integer(q.into());
    let phi = cyclotomic(e);
    let j = alpha.numerator();
    let mut rows = Vec::new();
    for (n, c) in coeffs.iter().enumerate() {
        let value = c.tate_eval(&qr).map_err(EngineError::from)? * qr.pow(((n + 1) * res.dim) as i32);
        let report = twisted_tally_with(f, res.dim, q, e, n, res.region, opts)?;
        let mut w = vec![BigRational::zero(); e as usize];
        for (k, &t) in report.tallies.iter().enumerate() {
            w[(j as usize * k) % e as usize] += BigRational::from_integer(t.into());
        }
        w[0] -= &value;
        let (_, r) = QPoly::new(w).div_rem(&phi);
        rows.push(SeriesRow {
            n,
            symbolic: value.to_string(),
            count: report.count,
            tallies: report.tallies,
            residual: r.coeffs().iter().map(|c| c.to_string()).collect(),
        });
    }
    let passed = rows.iter().all(|r| r.residual.is_empty());
    Ok(SeriesComparison { q, character: alpha, region: res.region.to_string(), rows, passed })
}
