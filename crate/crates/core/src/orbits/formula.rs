//! Euler-totient counting formulas `C(ℓ) = 2·Σ Φ((ℓ + j)/k)` and their
//! verification against enumerated orbits.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{count_series, enumerate_orbit, CountSeries, Orbit};
use crate::error::{Error, Result};
use crate::words::{totient_of_quotient, ClassKey};

/// The builtin formula table, shipped as a data file.
pub const FORMULA_TABLE_JSON: &str = include_str!("../../data/formula_table.json");

/// Residue class `ℓ ≡ residue (mod modulus)` on which a formula is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Support {
    pub modulus: u32,
    pub residue: u32,
}

impl Support {
    pub const ALL: Support = Support { modulus: 1, residue: 0 };

    pub fn contains(&self, l: usize) -> bool {
        l as u64 % self.modulus as u64 == self.residue as u64
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.modulus, self.residue) {
            (1, _) => f.write_str("all"),
            (2, 0) => f.write_str("even"),
            (m, 0) => write!(f, "multiple of {m}"),
            (m, r) => write!(f, "{r} mod {m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotientFormula {
    /// Multiset of `(k, j)`, kept sorted.
    pub terms: Vec<(u32, i32)>,
    pub support: Support,
    /// First length (inclusive) at which the formula applies.
    pub threshold: usize,
    /// Counts overriding the formula, at any length.
    #[serde(with = "specials_serde")]
    pub specials: BTreeMap<usize, u64>,
}

impl TotientFormula {
    pub fn new(
        mut terms: Vec<(u32, i32)>,
        support: Support,
        threshold: usize,
        specials: BTreeMap<usize, u64>,
    ) -> TotientFormula {
        terms.sort_unstable();
        TotientFormula { terms, support, threshold, specials }
    }

    /// `2·Σ Φ((ℓ + j)/k)` ignoring threshold, support and specials.
    pub fn formula_value(&self, l: usize) -> u64 {
        2 * self.terms.iter().map(|&(k, j)| totient_of_quotient(l as i64 + j as i64, k as i64)).sum::<u64>()
    }

    /// Predicted `C(ℓ)`.
    pub fn predict(&self, l: usize) -> u64 {
        if let Some(&v) = self.specials.get(&l) {
            v
        } else if l >= self.threshold && self.support.contains(l) {
            self.formula_value(l)
        } else {
            0
        }
    }

    pub fn growth_coefficient(&self) -> Ratio<i64> {
        growth_coefficient(self)
    }
}

impl fmt::Display for TotientFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut grouped: BTreeMap<(u32, i32), u32> = BTreeMap::new();
        for &t in &self.terms {
            *grouped.entry(t).or_default() += 1;
        }
        let parts: Vec<String> = grouped
            .iter()
            .map(|(&(k, j), &mult)| {
                let arg = match (k, j) {
                    (1, 0) => "l".to_string(),
                    (1, j) => format!("l{j:+}"),
                    (k, 0) => format!("l/{k}"),
                    (k, j) => format!("(l{j:+})/{k}"),
                };
                format!("{}Φ({arg})", 2 * mult)
            })
            .collect();
        write!(f, "{} for l>={} ({})", parts.join("+"), self.threshold, self.support)?;
        for (l, v) in &self.specials {
            write!(f, "; C{l}={v}")?;
        }
        Ok(())
    }
}

/// `p = Σ 1/k²`, the coefficient of `(6/π²)ℓ²` in the cumulative count.
pub fn growth_coefficient(f: &TotientFormula) -> Ratio<i64> {
    f.terms.iter().map(|&(k, _)| Ratio::new(1, (k * k) as i64)).sum()
}

mod specials_serde {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, u64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, u64>, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| k.parse::<usize>().map(|k| (k, v)).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// One row of the builtin table.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaRow {
    /// Word as printed (not necessarily canonical).
    pub printed_seed: String,
    pub seed: ClassKey,
    pub si: u32,
    pub formula: TotientFormula,
    /// Printed growth coefficient.
    pub p: Ratio<i64>,
    pub printed: String,
}

#[derive(Deserialize)]
struct RawRow {
    seed: String,
    si: u32,
    support: Support,
    threshold: usize,
    terms: Vec<(u32, i32)>,
    #[serde(with = "specials_serde")]
    specials: BTreeMap<usize, u64>,
    p: String,
    printed: String,
}

#[derive(Deserialize)]
struct RawTable {
    rows: Vec<RawRow>,
    reported_sums: BTreeMap<u32, String>,
    orbit_counts: BTreeMap<u32, usize>,
}

#[derive(Clone, Debug)]
pub struct FormulaTable {
    pub rows: Vec<FormulaRow>,
    /// Summary coefficient sums per self-intersection number, as reported
    /// next to the table.
    pub reported_sums: BTreeMap<u32, Ratio<i64>>,
    /// Reported number of orbits with quadratic growth per si.
    pub orbit_counts: BTreeMap<u32, usize>,
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    s.parse::<Ratio<i64>>().map_err(|e| Error::Table(format!("bad rational `{s}`: {e}")))
}

impl FormulaTable {
    pub fn from_json(text: &str) -> Result<FormulaTable> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| Error::Table(e.to_string()))?;
        let rows = raw
            .rows
            .into_iter()
            .map(|r| {
                Ok(FormulaRow {
                    seed: ClassKey::parse(&r.seed)?,
                    printed_seed: r.seed,
                    si: r.si,
                    formula: TotientFormula::new(r.terms, r.support, r.threshold, r.specials),
                    p: parse_ratio(&r.p)?,
                    printed: r.printed,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let reported_sums = raw
            .reported_sums
            .iter()
            .map(|(&k, v)| Ok((k, parse_ratio(v)?)))
            .collect::<Result<_>>()?;
        Ok(FormulaTable { rows, reported_sums, orbit_counts: raw.orbit_counts })
    }

    pub fn get(&self, seed: &ClassKey) -> Option<&FormulaRow> {
        self.rows.iter().find(|r| &r.seed == seed)
    }

    pub fn rows_with_si(&self, si: u32) -> impl Iterator<Item = &FormulaRow> {
        self.rows.iter().filter(move |r| r.si == si)
    }

    /// Sum of printed row coefficients for one si value.
    pub fn coefficient_sum(&self, si: u32) -> Ratio<i64> {
        self.rows_with_si(si).map(|r| r.p).sum()
    }
}

pub fn builtin_formula_table() -> &'static FormulaTable {
    static TABLE: OnceLock<FormulaTable> = OnceLock::new();
    TABLE.get_or_init(|| FormulaTable::from_json(FORMULA_TABLE_JSON).expect("builtin table parses"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LengthCheck {
    pub length: usize,
    pub enumerated: u64,
    pub predicted: u64,
}

impl LengthCheck {
    pub fn matches(&self) -> bool {
        self.enumerated == self.predicted
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every length agrees.
    Exact,
    /// Disagreements only next to the printed threshold, away from any
    /// printed special case, with agreement from some length on.
    BoundaryOnly,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub seed: ClassKey,
    pub cap: usize,
    pub checks: Vec<LengthCheck>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &LengthCheck> {
        self.checks.iter().filter(|c| !c.matches())
    }
}

/// Enumerates the orbit of a table seed and compares every length.
pub fn verify_formula(seed: &ClassKey, cap: usize) -> Result<VerificationReport> {
    let row = builtin_formula_table().get(seed).ok_or_else(|| Error::UnknownSeed(seed.to_string()))?;
    let orbit = enumerate_orbit(seed, cap)?;
    Ok(verify_orbit(&orbit, &row.formula))
}

/// Compares an enumerated orbit (ground truth) with a formula.
pub fn verify_orbit(orbit: &Orbit, formula: &TotientFormula) -> VerificationReport {
    let series: CountSeries = count_series(orbit);
    let checks: Vec<LengthCheck> = (1..=orbit.cap)
        .map(|l| LengthCheck { length: l, enumerated: series.count(l), predicted: formula.predict(l) })
        .collect();
    // "ℓ > x" versus "ℓ ≥ x" moves the threshold by one step of the support.
    let band = formula.support.modulus as usize;
    let mut notes = Vec::new();
    let mut boundary_only = true;
    for c in checks.iter().filter(|c| !c.matches()) {
        let near = c.length + band >= formula.threshold && c.length < formula.threshold + band;
        let special = formula.specials.contains_key(&c.length);
        let kind = if special {
            "printed special case disagrees"
        } else if near {
            "disagreement at the printed threshold"
        } else {
            "disagreement away from the threshold"
        };
        if special || !near {
            boundary_only = false;
        }
        notes.push(format!(
            "l={}: enumerated {} vs predicted {} ({kind})",
            c.length, c.enumerated, c.predicted
        ));
    }
    let verdict = if notes.is_empty() {
        Verdict::Exact
    } else if boundary_only && checks.last().is_some_and(|c| c.matches()) {
        Verdict::BoundaryOnly
    } else {
        Verdict::Mismatch
    };
    VerificationReport { seed: orbit.seed.clone(), cap: orbit.cap, checks, verdict, notes }
}
