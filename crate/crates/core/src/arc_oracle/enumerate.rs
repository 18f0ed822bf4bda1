//! Depth-first enumeration of truncated arcs, one `t`-degree at a time.
//!
//! The coefficient of `t^k` in `f(phi)` depends only on the coefficients of
//! `phi` up to degree `k`, so a prefix is abandoned as soon as a coefficient
//! that must vanish does not.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::field::SmallField;
use super::OracleError;

/// `f` reduced into `F_q`: terms `c * prod x_i^{e_i}`.
#[derive(Clone, Debug)]
pub(crate) struct FieldPoly {
    pub nvars: usize,
    pub terms: Vec<(u8, Vec<(usize, u32)>)>,
}

impl FieldPoly {
    fn max_degrees(&self) -> Vec<u32> {
        let mut d = vec![0; self.nvars];
        for (_, fs) in &self.terms {
            for &(i, e) in fs {
                d[i] = d[i].max(e);
            }
        }
        d
    }
}

/// What to count at the final level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    /// `ord_t f = n`, tallied by the discrete log of the `t^n` coefficient.
    Exact,
    /// `f = 0 mod t^{n+1}`.
    Vanishing,
}

pub(crate) struct Job<'a> {
    pub field: &'a SmallField,
    pub f: &'a FieldPoly,
    /// Which variables have constant term forced to zero.
    pub pinned: Vec<bool>,
    pub n: usize,
    pub d: usize,
    pub target: Target,
    pub budget: u64,
}

/// Per-worker series state. Every array is indexed by `t`-degree and only
/// entry `k` is written while level `k` is processed, so backtracking needs
/// no undo.
struct State<'a> {
    job: &'a Job<'a>,
    len: usize,
    /// `coeff[i][k]`
    coeff: Vec<Vec<u8>>,
    /// `power[i][e - 1][k]`, coefficients of `x_i^e`
    power: Vec<Vec<Vec<u8>>>,
    /// `partial[t][j][k]`, coefficients of the product of the first `j + 1`
    /// factors of term `t`
    partial: Vec<Vec<Vec<u8>>>,
    nodes: u64,
}

const FLUSH: u64 = 1 << 12;

impl<'a> State<'a> {
    fn new(job: &'a Job<'a>) -> Self {
        let len = job.n + 1;
        let degs = job.f.max_degrees();
        State {
            job,
            len,
            coeff: vec![vec![0; len]; job.f.nvars],
            power: degs.iter().map(|&e| vec![vec![0; len]; e as usize]).collect(),
            partial: job.f.terms.iter().map(|(_, fs)| vec![vec![0; len]; fs.len()]).collect(),
            nodes: 0,
        }
    }

    /// Coefficient of `t^k` in `f(phi)` once level `k` is set.
    fn level(&mut self, k: usize) -> u8 {
        let fq = self.job.field;
        for i in 0..self.coeff.len() {
            if self.power[i].is_empty() {
                continue;
            }
            self.power[i][0][k] = self.coeff[i][k];
            for e in 1..self.power[i].len() {
                let mut acc = 0u8;
                for j in 0..=k {
                    acc = fq.add(acc, fq.mul(self.coeff[i][j], self.power[i][e - 1][k - j]));
                }
                self.power[i][e][k] = acc;
            }
        }
        let mut total = 0u8;
        for (t, (c, fs)) in self.job.f.terms.iter().enumerate() {
            if fs.is_empty() {
                if k == 0 {
                    total = fq.add(total, *c);
                }
                continue;
            }
            let (i0, e0) = fs[0];
            self.partial[t][0][k] = self.power[i0][e0 as usize - 1][k];
            for j in 1..fs.len() {
                let (i, e) = fs[j];
                let mut acc = 0u8;
                for l in 0..=k {
                    acc = fq.add(acc, fq.mul(self.partial[t][j - 1][l], self.power[i][e as usize - 1][k - l]));
                }
                self.partial[t][j][k] = acc;
            }
            total = fq.add(total, fq.mul(*c, self.partial[t][fs.len() - 1][k]));
        }
        total
    }

    fn set_level(&mut self, k: usize, mut code: usize) {
        let q = self.job.field.order();
        for i in 0..self.coeff.len() {
            self.coeff[i][k] = (code % q) as u8;
            code /= q;
        }
    }

    fn allowed(&self, k: usize, code: usize) -> bool {
        if k > 0 {
            return true;
        }
        let q = self.job.field.order();
        let mut c = code;
        for &p in &self.job.pinned {
            if p && c % q != 0 {
                return false;
            }
            c /= q;
        }
        true
    }

    fn visit(&mut self, k: usize, code: usize, tallies: &mut [u128], spent: &AtomicU64, stop: &AtomicBool) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes % FLUSH == 0 {
            let total = spent.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
            if total > self.job.budget || stop.load(Ordering::Relaxed) {
                stop.store(true, Ordering::Relaxed);
                return Err(OracleError::BudgetExceeded { budget: self.job.budget });
            }
        }
        self.set_level(k, code);
        let c = self.level(k);
        if k < self.len - 1 {
            if c == 0 {
                self.descend(k + 1, tallies, spent, stop)?;
            }
            return Ok(());
        }
        match self.job.target {
            Target::Exact if c != 0 => tallies[self.job.field.log(c) as usize % self.job.d] += 1,
            Target::Vanishing if c == 0 => tallies[0] += 1,
            _ => {}
        }
        Ok(())
    }

    fn descend(&mut self, k: usize, tallies: &mut [u128], spent: &AtomicU64, stop: &AtomicBool) -> Result<(), OracleError> {
        let width = self.job.field.order().pow(self.coeff.len() as u32);
        for code in 0..width {
            if self.allowed(k, code) {
                self.visit(k, code, tallies, spent, stop)?;
            }
        }
        Ok(())
    }
}

/// Runs the enumeration, splitting the degree-zero choices across threads.
pub(crate) fn run(job: &Job) -> Result<Vec<u128>, OracleError> {
    let width = job.field.order().checked_pow(job.f.nvars as u32).ok_or(OracleError::BudgetExceeded { budget: job.budget })?;
    if width as u64 > job.budget {
        return Err(OracleError::BudgetExceeded { budget: job.budget });
    }
    let spent = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let probe = State::new(job);
    let roots: Vec<usize> = (0..width).filter(|&c| probe.allowed(0, c)).collect();
    let parts: Vec<Result<Vec<u128>, OracleError>> = roots
        .par_iter()
        .map(|&code| {
            let mut st = State::new(job);
            let mut tallies = vec![0u128; job.d];
            st.visit(0, code, &mut tallies, &spent, &stop)?;
            spent.fetch_add(st.nodes % FLUSH, Ordering::Relaxed);
            Ok(tallies)
        })
        .collect();
    let mut out = vec![0u128; job.d];
    for p in parts {
        for (o, t) in out.iter_mut().zip(p?) {
            *o += t;
        }
    }
    if spent.load(Ordering::Relaxed) > job.budget {
        return Err(OracleError::BudgetExceeded { budget: job.budget });
    }
    Ok(out)
}
