//! Pentagons with four right angles.
//!
//! Side `l3` is laid on the imaginary axis from `W_a = i` to `W_b = i·e^{l3}`.
//! Perpendiculars of unknown lengths `s` and `t` are erected on the same side
//! at both ends, then perpendiculars of lengths `l1` and `l2` at their far
//! ends. Newton's method on `(s, t)` closes the two flanks at `G`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::plane::{angle_at, distance, forward, frame_heading, frame_point, rotate, Isometry};
use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;
pub const TOLERANCE: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
}

impl MetricParams {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<MetricParams> {
        let p = MetricParams { l1, l2, l3 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(self.l1) && ok(self.l2) && ok(self.l3) {
            Ok(())
        } else {
            Err(Error::InvalidParams(self.l1, self.l2, self.l3))
        }
    }

    /// `min(2·l1, 2·l2, l3)`: every class satisfies `gl ≥ c·wl`.
    pub fn inclusion_constant(&self) -> f64 {
        (2.0 * self.l1).min(2.0 * self.l2).min(self.l3)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pentagon {
    pub g: Complex64,
    pub v_a: Complex64,
    pub w_a: Complex64,
    pub w_b: Complex64,
    pub v_b: Complex64,
    pub s: f64,
    pub t: f64,
    /// Angle at `G`.
    pub phi: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl Pentagon {
    /// Vertices in cyclic order `G, V_a, W_a, W_b, V_b`.
    pub fn vertices(&self) -> [Complex64; 5] {
        [self.g, self.v_a, self.w_a, self.w_b, self.v_b]
    }

    /// Measured side lengths `(l1, s, l3, t, l2)`.
    pub fn side_lengths(&self) -> [f64; 5] {
        let v = self.vertices();
        std::array::from_fn(|k| distance(v[k], v[(k + 1) % 5]))
    }

    /// Measured angles at `G, V_a, W_a, W_b, V_b`.
    pub fn angles(&self) -> [f64; 5] {
        let v = self.vertices();
        std::array::from_fn(|k| angle_at(v[k], v[(k + 4) % 5], v[(k + 1) % 5]))
    }

    /// Largest deviation of sides and right angles from their targets.
    pub fn max_residual(&self, p: &MetricParams) -> f64 {
        let want = [p.l1, self.s, p.l3, self.t, p.l2];
        let sides = self.side_lengths();
        let angles = self.angles();
        let side_err = (0..5).map(|k| (sides[k] - want[k]).abs());
        let angle_err = (1..5).map(|k| (angles[k] - FRAC_PI_2).abs());
        side_err.chain(angle_err).fold(0.0, f64::max)
    }
}

fn flanks(p: &MetricParams, s: f64, t: f64) -> (Isometry, Isometry) {
    let fa = rotate(-FRAC_PI_2) * forward(s) * rotate(FRAC_PI_2) * forward(p.l1);
    let fb = forward(p.l3) * rotate(-FRAC_PI_2) * forward(t) * rotate(-FRAC_PI_2) * forward(p.l2);
    (fa, fb)
}

fn gap(p: &MetricParams, s: f64, t: f64) -> Complex64 {
    let (fa, fb) = flanks(p, s, t);
    frame_point(&fa) - frame_point(&fb)
}

pub fn solve_pentagon(p: &MetricParams) -> Result<Pentagon> {
    p.validate()?;
    // Seed from the all-right pentagon: sinh(s)·sinh(l3) = cosh(l2).
    let mut s = (p.l2.cosh() / p.l3.sinh()).asinh();
    let mut t = (p.l1.cosh() / p.l3.sinh()).asinh();
    let mut r = gap(p, s, t);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS && r.norm() >= 1e-14 {
        iterations += 1;
        let h = 1e-7;
        let rs = (gap(p, s + h, t) - r) / h;
        let rt = (gap(p, s, t + h) - r) / h;
        let det = rs.re * rt.im - rt.re * rs.im;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let ds = -(rt.im * r.re - rt.re * r.im) / det;
        let dt = -(-rs.im * r.re + rs.re * r.im) / det;
        let mut lambda = 1.0;
        let mut improved = false;
        while lambda > 1e-6 {
            let (ns, nt) = (s + lambda * ds, t + lambda * dt);
            if ns > 0.0 && nt > 0.0 {
                let nr = gap(p, ns, nt);
                if nr.norm() < r.norm() {
                    (s, t, r) = (ns, nt, nr);
                    improved = true;
                    break;
                }
            }
            lambda /= 2.0;
        }
        if !improved {
            break;
        }
    }
    let residual = r.norm();
    if !(residual < TOLERANCE) {
        return Err(Error::NonConvergence { residual, iterations });
    }
    let (fa, fb) = flanks(p, s, t);
    let g = frame_point(&fa);
    let phi = (frame_heading(&fa) / frame_heading(&fb)).arg().abs();
    if !(phi > 0.0 && phi < FRAC_PI_2) {
        return Err(Error::NoPentagon { l1: p.l1, l2: p.l2, l3: p.l3, angle: phi });
    }
    Ok(Pentagon {
        g,
        v_a: frame_point(&(rotate(-FRAC_PI_2) * forward(s))),
        w_a: Complex64::i(),
        w_b: Complex64::new(0.0, p.l3.exp()),
        v_b: frame_point(&(forward(p.l3) * rotate(-FRAC_PI_2) * forward(t))),
        s,
        t,
        phi,
        residual,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Right-angled pentagon trigonometry: cos φ = (sinh l1 sinh l2 − cosh l3)/(cosh l1 cosh l2).
    fn phi_oracle(p: &MetricParams) -> f64 {
        ((p.l1.sinh() * p.l2.sinh() - p.l3.cosh()) / (p.l1.cosh() * p.l2.cosh())).acos()
    }

    #[test]
    fn both_metrics_close_up() {
        for (l1, l2, l3) in [(1.0, 1.2, 1.012), (0.89, 0.889, 0.2149)] {
            let p = MetricParams::new(l1, l2, l3).unwrap();
            let pent = solve_pentagon(&p).unwrap();
            assert!(pent.max_residual(&p) < 1e-9, "{:?}", pent);
            assert!((pent.angles()[0] - pent.phi).abs() < 1e-9);
            assert!((pent.phi - phi_oracle(&p)).abs() < 1e-9);
            assert!(pent.phi < FRAC_PI_2);
        }
    }

    #[test]
    fn symmetric_flanks() {
        let p = MetricParams::new(1.1, 1.1, 0.7).unwrap();
        let pent = solve_pentagon(&p).unwrap();
        assert!((pent.s - pent.t).abs() < 1e-9);
        // The mirror fixes the perpendicular bisector of W_a W_b, i.e. the circle |z| = e^{l3/2}.
        let mirror = |z: Complex64| {
            let r2 = p.l3.exp();
            r2 / z.conj()
        };
        assert!((mirror(pent.v_a) - pent.v_b).norm() < 1e-9);
        assert!((mirror(pent.g) - pent.g).norm() < 1e-9);
    }

    #[test]
    fn obtuse_corner_is_rejected() {
        // sinh(l1)·sinh(l2) < cosh(l3) forces an obtuse angle at G.
        let p = MetricParams::new(0.3, 0.3, 0.5).unwrap();
        assert!(matches!(solve_pentagon(&p), Err(Error::NoPentagon { .. }) | Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn bad_params() {
        assert!(MetricParams::new(1.0, -1.0, 1.0).is_err());
        assert!(MetricParams::new(1.0, f64::NAN, 1.0).is_err());
        let p = MetricParams::new(1.0, 1.2, 1.012).unwrap();
        assert_eq!(p.inclusion_constant(), 1.012);
    }
}
