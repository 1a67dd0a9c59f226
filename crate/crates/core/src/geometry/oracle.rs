//! Self-intersection counted from the hyperbolic picture.
//!
//! Put the axis `X` of `ρ(w)` on the imaginary axis. Every lift of the closed
//! geodesic that crosses `X` is, up to translation by `w`, of the form
//! `ρ(p_i p_j⁻¹)·X` for prefixes `p_i ≠ p_j` of `w`. A lift with endpoints
//! `y1·y2 < 0` meets `X` at height `√(−y1·y2)`. Each self-intersection point
//! shows up twice along one period of `X`, so `si` is half the number of
//! distinct crossing heights modulo the translation length.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::plane::{axis_endpoints, sending_to_axis, BoundaryPoint};
use super::representation::Representation;
use crate::error::{Error, Result};
use crate::words::{free_reduce, inverse_letters, ClassKey, Letter};

const COLLISION: f64 = 1e-9;
const SAME_POINT: f64 = 1e-7;

pub fn self_intersection_geometric(rep: &Representation, class: &ClassKey) -> Result<u32> {
    if !class.is_primitive() {
        return Err(Error::NonPrimitive(class.to_string()));
    }
    let w = class.letters();
    let n = w.len();
    let hw = rep.holonomy(w);
    let period = hw.translation_length().map_err(|_| Error::EllipticOrParabolic {
        word: class.to_string(),
        trace: hw.trace().abs(),
    })?;
    let (att, rep_pt) = axis_endpoints(&hw)?;
    let t = sending_to_axis(rep_pt, att);
    let t_inv = t.inverse();
    check_shift_endpoints(rep, class)?;

    let mut heights: Vec<f64> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let h = t * rep.holonomy(&lift_word(w, i, j)) * t_inv;
            // Endpoints of h·(0, ∞) are b/d and a/c.
            let (y1, y2) = (h.b / h.d, h.a / h.c);
            if y1 * y2 < 0.0 {
                let s = 0.5 * (-y1 * y2).ln();
                heights.push(s.rem_euclid(period));
            }
        }
    }
    heights.sort_by(f64::total_cmp);
    let mut distinct: Vec<f64> = Vec::new();
    for s in heights {
        if distinct.last().is_none_or(|&last| s - last > SAME_POINT) {
            distinct.push(s);
        }
    }
    // Wrap-around: the first and last may be the same point modulo the period.
    if distinct.len() > 1 && distinct[0] + period - distinct[distinct.len() - 1] <= SAME_POINT {
        distinct.pop();
    }
    if distinct.len() % 2 == 1 {
        return Err(Error::EndpointCollision(class.to_string()));
    }
    Ok(distinct.len() as u32 / 2)
}

/// A short word for the lift `p_i p_j⁻¹·X`.
///
/// With `w = p_i s_i`, left and right multiplication by powers of `w` only
/// slide the lift along `X`, so any of `{p_i, s_i⁻¹}·{p_j⁻¹, s_j}` will do.
/// Hidden powers of `w` inside a longer word would stretch rounding errors
/// near the endpoints of `X` by `e^{gl(w)}`; the shortest reduced form wins.
fn lift_word(w: &[Letter], i: usize, j: usize) -> Vec<Letter> {
    let lefts = [w[..i].to_vec(), inverse_letters(&w[i..])];
    let rights = [inverse_letters(&w[..j]), w[j..].to_vec()];
    let mut best: Option<Vec<Letter>> = None;
    for l in &lefts {
        for r in &rights {
            let mut word = l.clone();
            word.extend_from_slice(r);
            let word = free_reduce(&word);
            if best.as_ref().is_none_or(|b| word.len() < b.len()) {
                best = Some(word);
            }
        }
    }
    best.expect("four candidates")
}

/// Endpoints of the axes of all cyclic shifts, seen from `i` as angles on the
/// disc, must stay `COLLISION` apart for the linking signs to be trusted.
fn check_shift_endpoints(rep: &Representation, class: &ClassKey) -> Result<()> {
    let word = class.word();
    let mut angles = Vec::with_capacity(2 * word.len());
    for i in 0..word.len() {
        let (p, q) = axis_endpoints(&rep.holonomy(word.rotate(i).letters()))?;
        angles.push(disc_angle(p));
        angles.push(disc_angle(q));
    }
    angles.sort_by(f64::total_cmp);
    let tight = angles.windows(2).any(|w| w[1] - w[0] < COLLISION)
        || angles[0] + 2.0 * PI - angles[angles.len() - 1] < COLLISION;
    if tight {
        Err(Error::EndpointCollision(class.to_string()))
    } else {
        Ok(())
    }
}

/// Boundary point as an angle in `[0, 2π)` on the disc model centred at `i`.
fn disc_angle(x: BoundaryPoint) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        let z = Complex64::new(x, 0.0);
        ((z - Complex64::i()) / (z + Complex64::i())).arg().rem_euclid(2.0 * PI)
    }
}
