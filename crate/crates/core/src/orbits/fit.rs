//! Recovers a totient formula from an enumerated count series by peeling off
//! one `Φ((ℓ + j)/k)` term at a time.

use std::collections::{BTreeMap, HashSet};

use super::formula::{FormulaRow, Support, TotientFormula};
use super::CountSeries;
use crate::error::{Error, Result};
use crate::words::totient_of_quotient;

#[derive(Clone, Copy, Debug)]
pub struct FitConfig {
    pub max_k: u32,
    pub max_abs_j: i32,
    pub max_terms: usize,
    /// The formula must hold from this length on; earlier lengths become
    /// special cases.
    pub max_threshold: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { max_k: 6, max_abs_j: 16, max_terms: 6, max_threshold: 14 }
    }
}

pub fn fit_totient_formula(series: &CountSeries) -> Result<TotientFormula> {
    fit_with(series, FitConfig::default())
}

struct Candidate {
    term: (u32, i32),
    values: Vec<i64>,
}

struct Search<'a> {
    candidates: &'a [Candidate],
    failed: HashSet<Vec<usize>>,
}

impl Search<'_> {
    fn peel(&mut self, residual: &mut [i64], chosen: &mut Vec<usize>, left: usize) -> bool {
        let Some(pos) = residual.iter().position(|&r| r != 0) else {
            return true;
        };
        if left == 0 || residual[pos] < 0 {
            return false;
        }
        let mut key = chosen.clone();
        key.sort_unstable();
        if !self.failed.insert(key) {
            return false;
        }
        let candidates = self.candidates;
        for (idx, c) in candidates.iter().enumerate() {
            if c.values[pos] == 0 || residual.iter().zip(&c.values).any(|(r, v)| v > r) {
                continue;
            }
            residual.iter_mut().zip(&c.values).for_each(|(r, v)| *r -= v);
            chosen.push(idx);
            if self.peel(residual, chosen, left - 1) {
                return true;
            }
            chosen.pop();
            residual.iter_mut().zip(&c.values).for_each(|(r, v)| *r += v);
        }
        false
    }
}

/// Searches for the fewest terms `(k, j)` within the configured bounds whose
/// prediction `2·Σ Φ((ℓ + j)/k)` matches the series exactly from some
/// threshold `<= max_threshold` up to the cap.
pub fn fit_with(series: &CountSeries, cfg: FitConfig) -> Result<TotientFormula> {
    let start = cfg.max_threshold.max(1);
    let cap = series.cap();
    if cap < start {
        return Err(Error::NoFormulaFound);
    }
    let window: Vec<usize> = (start..=cap).collect();
    let mut target = Vec::with_capacity(window.len());
    for &l in &window {
        let c = series.count(l);
        if !c.is_multiple_of(2) {
            return Err(Error::NoFormulaFound);
        }
        target.push(c as i64 / 2);
    }
    if target.iter().all(|&t| t == 0) {
        return Err(Error::NoFormulaFound);
    }

    let mut candidates = Vec::new();
    for k in 1..=cfg.max_k {
        for j in (-cfg.max_abs_j..=cfg.max_abs_j).rev() {
            let values: Vec<i64> =
                window.iter().map(|&l| totient_of_quotient(l as i64 + j as i64, k as i64) as i64).collect();
            if values.iter().any(|&v| v != 0) {
                candidates.push(Candidate { term: (k, j), values });
            }
        }
    }

    let mut search = Search { candidates: &candidates, failed: HashSet::new() };
    let mut chosen = Vec::new();
    let found = (1..=cfg.max_terms).any(|depth| {
        search.failed.clear();
        chosen.clear();
        let mut residual = target.clone();
        search.peel(&mut residual, &mut chosen, depth)
    });
    if !found {
        return Err(Error::NoFormulaFound);
    }

    let terms: Vec<(u32, i32)> = chosen.iter().map(|&i| candidates[i].term).collect();
    let mut formula = TotientFormula::new(terms, Support::ALL, 1, BTreeMap::new());
    let threshold = (1..=start)
        .find(|&t| (t..=cap).all(|l| formula.formula_value(l) == series.count(l)))
        .expect("the window itself matches");
    formula.threshold = threshold;
    formula.specials = (1..threshold).filter(|&l| series.count(l) != 0).map(|l| (l, series.count(l))).collect();
    formula.support = support_of(&formula.terms);
    Ok(formula)
}

fn support_of(terms: &[(u32, i32)]) -> Support {
    let (k, j) = terms[0];
    let residue = (-(j as i64)).rem_euclid(k as i64) as u32;
    if terms.iter().all(|&(k2, j2)| k2 == k && (-(j2 as i64)).rem_euclid(k as i64) as u32 == residue) {
        Support { modulus: k, residue }
    } else {
        Support::ALL
    }
}

/// A fitted formula recovers a table row when the term multisets agree and
/// the fit predicts every printed special case.
pub fn recovers_row(fitted: &TotientFormula, row: &FormulaRow) -> bool {
    fitted.terms == row.formula.terms
        && row.formula.specials.iter().all(|(&l, &v)| fitted.predict(l) == v)
}
