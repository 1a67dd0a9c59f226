//! Length spectra of orbits, the `h = (M−u)/√T` estimator, ratio reports and
//! the counting-function series.

mod conjectures;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{MetricParams, Representation};
use crate::orbits::{builtin_formula_table, enumerate_orbit};
use crate::words::ClassKey;

pub use conjectures::{
    conjecture_checks, C1Row, C2Row, C3Row, C4Row, C5Row, ConjectureReport, Suite, SuiteConfig,
};

/// Largest word cap `length_spectrum` will derive from `L/c` on its own.
pub const MAX_DERIVED_WORD_CAP: usize = 400;

/// Default geometric cap `100/c`.
pub fn default_max_gl(metric: &MetricParams) -> f64 {
    100.0 / metric.inclusion_constant()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub length: f64,
    pub class: ClassKey,
}

/// Geodesic lengths `≤ cap_geometric` of an orbit, sorted, repetitions kept.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrum {
    pub seed: ClassKey,
    pub metric: MetricParams,
    /// Cap as requested.
    pub requested_gl: f64,
    /// Cap actually guaranteed complete: `min(requested, c·word_cap)`.
    pub cap_geometric: f64,
    pub word_cap: usize,
    /// Sorted by length, ties by class.
    pub entries: Vec<SpectrumEntry>,
}

impl LengthSpectrum {
    pub fn lengths(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.length).collect()
    }

    pub fn count(&self) -> usize {
        self.entries.len()
    }

    pub fn min(&self) -> Option<f64> {
        self.entries.first().map(|e| e.length)
    }

    pub fn max(&self) -> Option<f64> {
        self.entries.last().map(|e| e.length)
    }

    /// Number of geodesics of length `≤ l`.
    pub fn counting_function(&self, l: f64) -> usize {
        self.entries.partition_point(|e| e.length <= l)
    }
}

/// Spectrum with the word cap derived from the inclusion constant.
pub fn length_spectrum(seed: &ClassKey, rep: &Representation, max_gl: f64) -> Result<LengthSpectrum> {
    length_spectrum_with(seed, rep, max_gl, None)
}

/// Spectrum with an optional word cap. When the cap is below `⌈L/c⌉` the
/// geometric cap shrinks to `c·max_wl` so the result stays complete.
pub fn length_spectrum_with(
    seed: &ClassKey,
    rep: &Representation,
    max_gl: f64,
    max_wl: Option<usize>,
) -> Result<LengthSpectrum> {
    if !(max_gl > 0.0) {
        return Err(Error::InvalidMetric(format!("geometric cap must be positive, got {max_gl}")));
    }
    let c = rep.c;
    let needed = (max_gl / c).ceil() as usize;
    let (word_cap, cap_geometric) = match max_wl {
        Some(w) if w < needed => (w, max_gl.min(c * w as f64)),
        Some(_) => (needed, max_gl),
        None if needed > MAX_DERIVED_WORD_CAP => {
            return Err(Error::CapTooLarge { cap: needed, budget: MAX_DERIVED_WORD_CAP })
        }
        None => (needed, max_gl),
    };
    let word_cap = word_cap.max(seed.len());
    let orbit = enumerate_orbit(seed, word_cap)?;
    let lengths = rep.geodesic_lengths(&orbit.members)?;
    let mut entries: Vec<SpectrumEntry> = orbit
        .members
        .into_iter()
        .zip(lengths)
        .filter(|(_, l)| *l <= cap_geometric)
        .map(|(class, length)| SpectrumEntry { length, class })
        .collect();
    entries.par_sort_by(|x, y| x.length.total_cmp(&y.length).then_with(|| x.class.cmp(&y.class)));
    Ok(LengthSpectrum {
        seed: seed.clone(),
        metric: rep.params,
        requested_gl: max_gl,
        cap_geometric,
        word_cap,
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEstimate {
    pub u: f64,
    pub max: f64,
    pub count: usize,
    /// `(M−u)/√T`.
    pub h: f64,
    /// `T/(M−u)²`, coefficient of the quadratic overlay.
    pub d: f64,
    /// Slope of the `b√k + u` overlay; equal to `h`.
    pub b: f64,
}

pub fn coefficient_estimate(sp: &LengthSpectrum) -> Result<CoefficientEstimate> {
    coefficient_estimate_of(&sp.lengths())
}

/// Estimate from a sorted list of lengths.
pub fn coefficient_estimate_of(sorted: &[f64]) -> Result<CoefficientEstimate> {
    let count = sorted.len();
    let (u, max) = match (sorted.first(), sorted.last()) {
        (Some(&u), Some(&m)) if count >= 2 && m > u => (u, m),
        _ => return Err(Error::DegenerateSpectrum { count }),
    };
    let spread = max - u;
    let h = spread / (count as f64).sqrt();
    Ok(CoefficientEstimate { u, max, count, h, d: count as f64 / (spread * spread), b: h })
}

/// `(h(a)/h(γ))²`: the growth coefficient of `γ` relative to the reference.
pub fn implied_p(reference: &CoefficientEstimate, target: &CoefficientEstimate) -> f64 {
    let r = reference.h / target.h;
    r * r
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Printed growth coefficient for a seed, if it has a builtin row.
pub fn table_p(seed: &ClassKey) -> Option<f64> {
    builtin_formula_table().get(seed).map(|r| ratio_to_f64(r.p))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub seed: ClassKey,
    pub metric: MetricParams,
    pub cap_geometric: f64,
    pub u: f64,
    pub max: f64,
    pub count: usize,
    pub h: f64,
    pub h_ratio: f64,
    pub implied_p: f64,
    pub table_p: Option<f64>,
    pub rel_error: Option<f64>,
}

/// Ratio study over seeds and metrics, with `a` as reference. The reference
/// row is added when `a` is not among the seeds. `max_gl` defaults to `100/c`.
pub fn ratio_report(
    seeds: &[ClassKey],
    reps: &[Representation],
    max_gl: Option<f64>,
    max_wl: Option<usize>,
) -> Result<Vec<RatioRow>> {
    let reference = ClassKey::parse("a")?;
    let mut all = vec![reference.clone()];
    all.extend(seeds.iter().filter(|s| **s != reference).cloned());
    let mut rows = Vec::new();
    for rep in reps {
        let cap = max_gl.unwrap_or_else(|| default_max_gl(&rep.params));
        let spectra = all
            .iter()
            .map(|s| length_spectrum_with(s, rep, cap, max_wl))
            .collect::<Result<Vec<_>>>()?;
        let ref_est = coefficient_estimate(&spectra[0])?;
        for (seed, sp) in all.iter().zip(&spectra) {
            let est = coefficient_estimate(sp)?;
            let p = implied_p(&ref_est, &est);
            let tp = table_p(seed);
            rows.push(RatioRow {
                seed: seed.clone(),
                metric: rep.params,
                cap_geometric: sp.cap_geometric,
                u: est.u,
                max: est.max,
                count: est.count,
                h: est.h,
                h_ratio: est.h / ref_est.h,
                implied_p: p,
                table_p: tp,
                rel_error: tp.map(|t| (p - t).abs() / t),
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MirzakhaniPoint {
    pub length: f64,
    pub count: usize,
    pub fit: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InversePoint {
    pub k: usize,
    pub length: f64,
    pub fit: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualPoint {
    pub k: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesBundle {
    pub estimate: CoefficientEstimate,
    /// Counting function at each distinct length, with `d(ℓ−u)²`.
    pub mirzakhani: Vec<MirzakhaniPoint>,
    /// Length of the `k`-th geodesic, with `b√k + u`.
    pub inverse: Vec<InversePoint>,
    /// `(length_k − u)/√k`.
    pub residual: Vec<ResidualPoint>,
}

pub fn series_bundle(sp: &LengthSpectrum) -> Result<SeriesBundle> {
    let est = coefficient_estimate(sp)?;
    let lengths = sp.lengths();
    let mut mirzakhani: Vec<MirzakhaniPoint> = Vec::new();
    for (i, &l) in lengths.iter().enumerate() {
        let fit = est.d * (l - est.u) * (l - est.u);
        match mirzakhani.last_mut() {
            Some(last) if last.length == l => last.count = i + 1,
            _ => mirzakhani.push(MirzakhaniPoint { length: l, count: i + 1, fit }),
        }
    }
    let inverse = lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let k = i + 1;
            InversePoint { k, length: l, fit: est.b * (k as f64).sqrt() + est.u }
        })
        .collect();
    let residual = lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| ResidualPoint { k: i + 1, value: (l - est.u) / ((i + 1) as f64).sqrt() })
        .collect();
    Ok(SeriesBundle { estimate: est, mirzakhani, inverse, residual })
}
