//! Checks for the conjectures on growth coefficients, length asymptotics and
//! orbit counts. C2 and C3 are report-only; C1, C4 and C5 have pass rules.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{coefficient_estimate, default_max_gl, implied_p, length_spectrum_with, table_p};
use crate::error::Result;
use crate::geometry::{build_metric, MetricParams};
use crate::orbits::{builtin_formula_table, enumerate_orbit, fit_totient_formula, recovers_row};
use crate::words::ClassKey;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Desk,
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seeds: Vec<ClassKey>,
    pub metrics: Vec<MetricParams>,
    /// Word cap for the spectra; the geometric cap is `min(100/c, c·max_wl)`.
    pub max_wl: usize,
    pub c1_tolerance: f64,
    /// Word cap for the fitter; every builtin row is fitted.
    pub fit_cap: usize,
    /// Points in the C3 length grid.
    pub grid: usize,
}

impl Suite {
    pub fn config(self) -> SuiteConfig {
        let seeds = ["a", "aabAB", "abaB", "aaabb", "aabaB"]
            .iter()
            .map(|s| ClassKey::parse(s).expect("valid seed"))
            .collect();
        let metrics = vec![
            MetricParams { l1: 1.0, l2: 1.2, l3: 1.012 },
            MetricParams { l1: 0.89, l2: 0.889, l3: 0.2149 },
        ];
        match self {
            Suite::Desk => SuiteConfig {
                seeds,
                metrics,
                max_wl: 120,
                c1_tolerance: 0.2,
                fit_cap: 40,
                grid: 256,
            },
            Suite::Full => SuiteConfig {
                seeds,
                metrics,
                max_wl: 170,
                c1_tolerance: 0.1,
                fit_cap: 60,
                grid: 1024,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C1Row {
    pub seed: ClassKey,
    pub metric: MetricParams,
    pub cap_geometric: f64,
    pub count: usize,
    pub implied_p: f64,
    pub table_p: Option<f64>,
    pub rel_error: Option<f64>,
    /// Whether the spectrum reaches `L = 100/c` within the word cap.
    pub complete: bool,
    /// Judged only on complete spectra of seeds with a printed coefficient.
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C2Row {
    pub seed: ClassKey,
    pub metric: MetricParams,
    /// `max_k |b√k + u − length_k|`.
    pub max_deviation: f64,
    /// Same over the last quarter of `k`.
    pub trailing_max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C3Row {
    pub seed: ClassKey,
    pub metric: MetricParams,
    /// `max |d(ℓ−u)² − s(ℓ)|` over a uniform grid on `[u, M]`.
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C4Row {
    pub seed: ClassKey,
    pub si: u32,
    pub cap: usize,
    pub fitted: Option<String>,
    pub printed: String,
    pub recovered: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct C5Row {
    pub si: u32,
    pub orbits: usize,
    /// Sum of the row coefficients.
    pub row_sum: String,
    /// Summary value reported next to the table, when it differs.
    pub reported_sum: Option<String>,
    pub row_gap: f64,
    pub reported_gap: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub c1: Vec<C1Row>,
    pub c2: Vec<C2Row>,
    pub c3: Vec<C3Row>,
    pub c4: Vec<C4Row>,
    pub c5: Vec<C5Row>,
}

impl ConjectureReport {
    /// At least one judged row, and every judged row within tolerance.
    pub fn c1_pass(&self) -> bool {
        let judged: Vec<bool> = self.c1.iter().filter_map(|r| r.pass).collect();
        !judged.is_empty() && judged.iter().all(|&p| p)
    }

    /// Every row with si ≤ 2 recovered and at least 10 of every 14 rows with si = 3.
    pub fn c4_pass(&self) -> bool {
        let low_ok = self.c4.iter().filter(|r| r.si <= 2).all(|r| r.recovered);
        let high: Vec<_> = self.c4.iter().filter(|r| r.si >= 3).collect();
        let got = high.iter().filter(|r| r.recovered).count();
        low_ok && got * 14 >= high.len() * 10
    }

    pub fn c5_pass(&self) -> bool {
        self.c5.iter().all(|r| r.pass)
    }

    pub fn passed(&self) -> bool {
        self.c1_pass() && self.c4_pass() && self.c5_pass()
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn conjecture_checks(cfg: &SuiteConfig) -> Result<ConjectureReport> {
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    let mut c3 = Vec::new();
    let reference = ClassKey::parse("a")?;
    for metric in &cfg.metrics {
        let rep = build_metric(metric)?;
        let cap = default_max_gl(metric);
        let ref_sp = length_spectrum_with(&reference, &rep, cap, Some(cfg.max_wl))?;
        let ref_est = coefficient_estimate(&ref_sp)?;
        for seed in &cfg.seeds {
            let sp = if *seed == reference {
                ref_sp.clone()
            } else {
                length_spectrum_with(seed, &rep, cap, Some(cfg.max_wl))?
            };
            let est = coefficient_estimate(&sp)?;
            let p = implied_p(&ref_est, &est);
            let tp = table_p(seed);
            let rel = tp.map(|t| (p - t).abs() / t);
            let complete = sp.cap_geometric >= cap;
            c1.push(C1Row {
                seed: seed.clone(),
                metric: *metric,
                cap_geometric: sp.cap_geometric,
                count: sp.count(),
                implied_p: p,
                table_p: tp,
                rel_error: rel,
                complete,
                pass: rel.filter(|_| complete).map(|e| e <= cfg.c1_tolerance),
            });

            let lengths = sp.lengths();
            let devs: Vec<f64> = lengths
                .iter()
                .enumerate()
                .map(|(i, &l)| (est.b * ((i + 1) as f64).sqrt() + est.u - l).abs())
                .collect();
            let tail = &devs[devs.len() - devs.len().div_ceil(4)..];
            c2.push(C2Row {
                seed: seed.clone(),
                metric: *metric,
                max_deviation: devs.iter().copied().fold(0.0, f64::max),
                trailing_max_deviation: tail.iter().copied().fold(0.0, f64::max),
            });

            let steps = cfg.grid.max(2);
            let max_dev = (0..steps)
                .map(|g| {
                    let l = est.u + (est.max - est.u) * g as f64 / (steps - 1) as f64;
                    let fit = est.d * (l - est.u) * (l - est.u);
                    (fit - sp.counting_function(l) as f64).abs()
                })
                .fold(0.0, f64::max);
            c3.push(C3Row { seed: seed.clone(), metric: *metric, max_deviation: max_dev });
        }
    }

    let table = builtin_formula_table();
    let c4 = table
        .rows
        .par_iter()
        .map(|row| {
            let orbit = enumerate_orbit(&row.seed, cfg.fit_cap)?;
            let fitted = fit_totient_formula(&orbit.count_series()).ok();
            Ok(C4Row {
                seed: row.seed.clone(),
                si: row.si,
                cap: cfg.fit_cap,
                recovered: fitted.as_ref().is_some_and(|f| recovers_row(f, row)),
                fitted: fitted.map(|f| f.to_string()),
                printed: row.printed.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let c5 = table
        .orbit_counts
        .iter()
        .map(|(&si, &orbits)| {
            let sum = table.coefficient_sum(si);
            let row_gap = (ratio_f64(sum) - orbits as f64).abs();
            let reported = table.reported_sums.get(&si).copied().filter(|r| *r != sum);
            let reported_gap = reported.map(|r| (ratio_f64(r) - orbits as f64).abs());
            C5Row {
                si,
                orbits,
                row_sum: sum.to_string(),
                reported_sum: reported.map(|r| r.to_string()),
                row_gap,
                reported_gap,
                pass: row_gap <= 1.0 && reported_gap.is_none_or(|g| g <= 1.0),
            }
        })
        .collect();

    Ok(ConjectureReport { c1, c2, c3, c4, c5 })
}
