//! Holonomy of the one-holed torus from a pentagon: `A = r_G·r_Y`, `B = r_G·r_O`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pentagon::{solve_pentagon, MetricParams, Pentagon};
use super::plane::{
    distance, line_through, midpoint, perpendicular_foot, rotation_pi, Isometry,
};
use crate::error::{Error, Result};
use crate::words::{enumerate_classes, ClassKey, Letter};

/// Classes up to this length are checked against `gl ≥ c·wl` when building.
pub const PROXY_WORD_LENGTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// `Y = V_a`, `O = V_b`.
    Vertex,
    /// `Y`, `O` at the midpoints of the octagon sides through `V_a`, `V_b`.
    OctagonMidpoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub params: MetricParams,
    pub placement: Placement,
    pub pentagon: Pentagon,
    pub a: Isometry,
    pub b: Isometry,
    pub y: Complex64,
    pub o: Complex64,
    pub g: Complex64,
    pub c: f64,
}

/// Octagon side midpoints `(Y, O)`.
///
/// The pentagon and its half-turn about `G` share the doubled `l1` and `l2`
/// sides. Extending the sides through `V_a` and through `r_G(V_b)` closes a
/// third pentagon at their common perpendicular; the octagon side through
/// `V_a` runs from `W_a` to the foot of that perpendicular.
pub fn octagon_midpoints(p: &Pentagon) -> Result<(Complex64, Complex64)> {
    let rg = rotation_pi(p.g);
    let side_a = line_through(p.w_a, p.v_a)?;
    let side_b = line_through(p.w_b, p.v_b)?;
    let turned = |(x, y): (f64, f64)| {
        let (u, v) = (rg.apply_boundary(x), rg.apply_boundary(y));
        if u < v { (u, v) } else { (v, u) }
    };
    let foot_a = perpendicular_foot(side_a, turned(side_b))?;
    let foot_b = perpendicular_foot(side_b, turned(side_a))?;
    Ok((midpoint(p.w_a, foot_a)?, midpoint(p.w_b, foot_b)?))
}

impl Representation {
    pub fn with_placement(params: &MetricParams, placement: Placement) -> Result<Representation> {
        let pentagon = solve_pentagon(params)?;
        let (y, o) = match placement {
            Placement::Vertex => (pentagon.v_a, pentagon.v_b),
            Placement::OctagonMidpoint => octagon_midpoints(&pentagon)?,
        };
        let rg = rotation_pi(pentagon.g);
        Ok(Representation {
            params: *params,
            placement,
            pentagon,
            a: rg * rotation_pi(y),
            b: rg * rotation_pi(o),
            y,
            o,
            g: pentagon.g,
            c: params.inclusion_constant(),
        })
    }

    pub fn generator(&self, x: Letter) -> Isometry {
        match x {
            Letter::A => self.a,
            Letter::AInv => self.a.inverse(),
            Letter::B => self.b,
            Letter::BInv => self.b.inverse(),
        }
    }

    pub fn holonomy(&self, word: &[Letter]) -> Isometry {
        word.iter().fold(Isometry::IDENTITY, |m, &x| m * self.generator(x))
    }

    pub fn commutator_trace(&self) -> f64 {
        let (a, b) = (self.a, self.b);
        (a * b * a.inverse() * b.inverse()).trace()
    }

    /// Length of the geodesic boundary.
    pub fn boundary_length(&self) -> f64 {
        2.0 * (self.commutator_trace().abs() / 2.0).acosh()
    }

    pub fn geodesic_length(&self, class: &ClassKey) -> Result<f64> {
        let h = self.holonomy(class.letters());
        h.translation_length().map_err(|_| Error::EllipticOrParabolic {
            word: class.to_string(),
            trace: h.trace().abs(),
        })
    }

    /// Geodesic lengths of many classes, in input order.
    pub fn geodesic_lengths(&self, classes: &[ClassKey]) -> Result<Vec<f64>> {
        classes.par_iter().map(|k| self.geodesic_length(k)).collect()
    }

    /// Structural checks and the discreteness proxies; returns the failures.
    pub fn check(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let rg = rotation_pi(self.g);
        let ry = rotation_pi(self.y);
        let ro = rotation_pi(self.o);
        for (name, m) in [("A", self.a), ("B", self.b), ("r_G", rg), ("r_Y", ry), ("r_O", ro)] {
            if (m.det() - 1.0).abs() > 1e-12 {
                failures.push(format!("det({name}) = {}", m.det()));
            }
        }
        for (name, m) in [("r_G", rg), ("r_Y", ry), ("r_O", ro)] {
            if m.trace().abs() > 1e-9 {
                failures.push(format!("tr({name}) = {}", m.trace()));
            }
        }
        let k = self.commutator_trace();
        if !(k < -2.0) {
            failures.push(format!("tr[A,B] = {k} is not below -2"));
        }
        let law = [
            (self.a, distance(self.g, self.y), "a"),
            (self.b, distance(self.g, self.o), "b"),
        ];
        for (m, d, name) in law {
            match m.translation_length() {
                Ok(l) if (l - 2.0 * d).abs() <= 1e-9 => {}
                Ok(l) => failures.push(format!("gl({name}) = {l} but 2·dist = {}", 2.0 * d)),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
        if failures.is_empty() {
            failures.extend(self.inclusion_violations(PROXY_WORD_LENGTH));
        }
        failures
    }

    fn inclusion_violations(&self, max_len: usize) -> Vec<String> {
        let classes: Vec<ClassKey> = match enumerate_classes(max_len) {
            Ok(it) => it.collect(),
            Err(e) => return vec![e.to_string()],
        };
        classes
            .par_iter()
            .filter_map(|k| match self.geodesic_length(k) {
                Ok(gl) if gl >= self.c * k.len() as f64 - 1e-9 => None,
                Ok(gl) => Some(format!("gl({k}) = {gl} < c·wl = {}", self.c * k.len() as f64)),
                Err(e) => Some(e.to_string()),
            })
            .collect()
    }
}

/// Builds the holonomy with `Y = V_a`, falling back to octagon midpoints when a
/// structural check or discreteness proxy fails.
pub fn build_metric(params: &MetricParams) -> Result<Representation> {
    let mut reasons = Vec::new();
    for placement in [Placement::Vertex, Placement::OctagonMidpoint] {
        let rep = Representation::with_placement(params, placement)?;
        let failures = rep.check();
        if failures.is_empty() {
            return Ok(rep);
        }
        reasons.push(format!("{placement:?}: {}", failures.join("; ")));
    }
    Err(Error::InvalidMetric(reasons.join(" | ")))
}

/// How far apart the two placements put `Y` and `O`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlacementComparison {
    pub dist_y: f64,
    pub dist_o: f64,
    pub boundary_vertex: f64,
    pub boundary_octagon: f64,
    pub agree: bool,
}

pub fn compare_placements(params: &MetricParams) -> Result<PlacementComparison> {
    let v = Representation::with_placement(params, Placement::Vertex)?;
    let m = Representation::with_placement(params, Placement::OctagonMidpoint)?;
    let dist_y = distance(v.y, m.y);
    let dist_o = distance(v.o, m.o);
    Ok(PlacementComparison {
        dist_y,
        dist_o,
        boundary_vertex: v.boundary_length(),
        boundary_octagon: m.boundary_length(),
        agree: dist_y < 1e-9 && dist_o < 1e-9,
    })
}
