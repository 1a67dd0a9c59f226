//! CSV and plain-text writers. Floats are written with 17 significant digits.

use std::io::Write;

use crate::experiments::{LengthSpectrum, RatioRow, SeriesBundle};
use crate::orbits::{CountSeries, Orbit};

pub type CsvResult = std::result::Result<(), csv::Error>;

/// `x` with 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

/// One canonical word per line, in the orbit's sorted order.
pub fn write_orbit_members<W: Write>(mut out: W, orbit: &Orbit) -> std::io::Result<()> {
    for m in &orbit.members {
        writeln!(out, "{m}")?;
    }
    Ok(())
}

pub fn write_counts<W: Write>(out: W, series: &CountSeries) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["wordlength", "count", "cumulative"])?;
    for (l, c, cum) in series.rows() {
        w.write_record([l.to_string(), c.to_string(), cum.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectrum<W: Write>(out: W, sp: &LengthSpectrum) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "length", "wordlength", "class"])?;
    for (i, e) in sp.entries.iter().enumerate() {
        w.write_record([
            (i + 1).to_string(),
            float(e.length),
            e.class.len().to_string(),
            e.class.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_ratios<W: Write>(out: W, rows: &[RatioRow]) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "seed", "l1", "l2", "l3", "cap_geometric", "u", "M", "T", "h", "h_ratio", "implied_p",
        "table_p", "rel_error",
    ])?;
    for r in rows {
        w.write_record([
            r.seed.to_string(),
            float(r.metric.l1),
            float(r.metric.l2),
            float(r.metric.l3),
            float(r.cap_geometric),
            float(r.u),
            float(r.max),
            r.count.to_string(),
            float(r.h),
            float(r.h_ratio),
            float(r.implied_p),
            opt_float(r.table_p),
            opt_float(r.rel_error),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Counting function `(ℓ, count, fit)`.
pub fn write_mirzakhani<W: Write>(out: W, s: &SeriesBundle) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["length", "count", "fit"])?;
    for p in &s.mirzakhani {
        w.write_record([float(p.length), p.count.to_string(), float(p.fit)])?;
    }
    w.flush()?;
    Ok(())
}

/// `(k, length_k, fit)`.
pub fn write_inverse<W: Write>(out: W, s: &SeriesBundle) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "length", "fit"])?;
    for p in &s.inverse {
        w.write_record([p.k.to_string(), float(p.length), float(p.fit)])?;
    }
    w.flush()?;
    Ok(())
}

/// `(k, (length_k − u)/√k)`.
pub fn write_residual<W: Write>(out: W, s: &SeriesBundle) -> CsvResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "value"])?;
    for p in &s.residual {
        w.write_record([p.k.to_string(), float(p.value)])?;
    }
    w.flush()?;
    Ok(())
}
