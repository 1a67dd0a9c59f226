//! Upper half-plane primitives: isometries as `SL(2,R)` matrices up to sign,
//! points, boundary points, distances and geodesic lines.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the boundary circle `R ∪ {∞}`; `f64::INFINITY` stands for ∞.
pub type BoundaryPoint = f64;

/// Orientation-preserving isometry `z ↦ (az+b)/(cz+d)`, identified with its negative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Isometry {
        Isometry { a, b, c, d }
    }

    /// Scales a matrix of positive determinant to determinant one.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Isometry {
        let s = (a * d - b * c).abs().sqrt();
        Isometry::new(a / s, b / s, c / s, d / s)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse, assuming determinant one.
    pub fn inverse(&self) -> Isometry {
        Isometry::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn apply_boundary(&self, x: BoundaryPoint) -> BoundaryPoint {
        if x.is_infinite() {
            if self.c == 0.0 {
                f64::INFINITY
            } else {
                self.a / self.c
            }
        } else {
            let den = self.c * x + self.d;
            if den == 0.0 {
                f64::INFINITY
            } else {
                (self.a * x + self.b) / den
            }
        }
    }

    /// Derivative modulus of the action at a boundary point.
    fn boundary_derivative(&self, x: BoundaryPoint) -> f64 {
        if x.is_infinite() {
            // In the chart w = -1/z near ∞ the derivative is c² (or 1/a² when c = 0).
            if self.c == 0.0 {
                1.0 / (self.a * self.a)
            } else {
                self.c * self.c
            }
        } else {
            let den = self.c * x + self.d;
            1.0 / (den * den)
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0
    }

    /// `2·arccosh(|tr|/2)`.
    pub fn translation_length(&self) -> Result<f64> {
        let t = self.trace().abs();
        if t <= 2.0 {
            return Err(Error::NotHyperbolic(t));
        }
        Ok(2.0 * (t / 2.0).acosh())
    }

    /// Entrywise distance to `other` or `-other`, whichever is smaller.
    pub fn projective_distance(&self, other: &Isometry) -> f64 {
        let plus = [self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d];
        let minus = [self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d];
        let norm = |v: [f64; 4]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        norm(plus).min(norm(minus))
    }
}

impl Mul for Isometry {
    type Output = Isometry;

    fn mul(self, o: Isometry) -> Isometry {
        Isometry::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Hyperbolic distance.
pub fn distance(z: Complex64, w: Complex64) -> f64 {
    2.0 * ((z - w).norm() / (2.0 * (z.im * w.im).sqrt())).asinh()
}

/// The half-turn about `z`.
pub fn rotation_pi(z: Complex64) -> Isometry {
    let (x, y) = (z.re, z.im);
    Isometry::new(x / y, -(x * x + y * y) / y, 1.0 / y, -x / y)
}

/// Translation by `d` along the imaginary axis, towards ∞.
pub fn forward(d: f64) -> Isometry {
    Isometry::new((d / 2.0).exp(), 0.0, 0.0, (-d / 2.0).exp())
}

/// Rotation by `t` about `i` (clockwise for positive `t`).
pub fn rotate(t: f64) -> Isometry {
    let (s, c) = (t / 2.0).sin_cos();
    Isometry::new(c, -s, s, c)
}

/// Base point `F(i)` of a frame.
pub fn frame_point(f: &Isometry) -> Complex64 {
    f.apply(Complex64::i())
}

/// Heading of a frame: the image of the upward unit vector at `i`.
pub fn frame_heading(f: &Isometry) -> Complex64 {
    let den = Complex64::i() * f.c + f.d;
    Complex64::i() / (den * den)
}

/// Unit tangent at `z` of the geodesic segment from `z` to `w`.
pub fn tangent_towards(z: Complex64, w: Complex64) -> Complex64 {
    let chord = w - z;
    let t = if (z.re - w.re).abs() <= 1e-14 * (1.0 + z.re.abs()) {
        Complex64::new(0.0, chord.im.signum())
    } else {
        let center = (w.norm_sqr() - z.norm_sqr()) / (2.0 * (w.re - z.re));
        let radial = z - center;
        let t = Complex64::i() * radial;
        if t.re * chord.re + t.im * chord.im >= 0.0 {
            t
        } else {
            -t
        }
    };
    t / t.norm()
}

/// Angle at `z` between the geodesic segments towards `p` and `q`, in `[0, π]`.
pub fn angle_at(z: Complex64, p: Complex64, q: Complex64) -> f64 {
    (tangent_towards(z, p) / tangent_towards(z, q)).arg().abs()
}

/// Endpoints of the geodesic line through two distinct points, as `(lower, upper)`
/// for a semicircle and `(x, ∞)` for a vertical line.
pub fn line_through(z: Complex64, w: Complex64) -> Result<(BoundaryPoint, BoundaryPoint)> {
    if (z - w).norm() < 1e-14 {
        return Err(Error::DegeneratePoints);
    }
    if (z.re - w.re).abs() <= 1e-14 * (1.0 + z.re.abs()) {
        return Ok((z.re, f64::INFINITY));
    }
    let center = (w.norm_sqr() - z.norm_sqr()) / (2.0 * (w.re - z.re));
    let r = (z - center).norm();
    Ok((center - r, center + r))
}

/// An isometry sending `p` to 0 and `q` to ∞.
pub fn sending_to_axis(p: BoundaryPoint, q: BoundaryPoint) -> Isometry {
    if q.is_infinite() {
        Isometry::new(1.0, -p, 0.0, 1.0)
    } else if p.is_infinite() {
        Isometry::new(0.0, -1.0, 1.0, -q)
    } else if p > q {
        Isometry::normalized(1.0, -p, 1.0, -q)
    } else {
        Isometry::normalized(-1.0, p, 1.0, -q)
    }
}

/// Foot on `l1` of the common perpendicular to the ultraparallel lines `l1`, `l2`.
pub fn perpendicular_foot(
    l1: (BoundaryPoint, BoundaryPoint),
    l2: (BoundaryPoint, BoundaryPoint),
) -> Result<Complex64> {
    let t = sending_to_axis(l1.0, l1.1);
    let (x, y) = (t.apply_boundary(l2.0), t.apply_boundary(l2.1));
    if !(x * y > 0.0) || x.is_infinite() || y.is_infinite() {
        return Err(Error::DegeneratePoints);
    }
    Ok(t.inverse().apply(Complex64::new(0.0, (x * y).sqrt())))
}

/// Hyperbolic midpoint of two points.
pub fn midpoint(z: Complex64, w: Complex64) -> Result<Complex64> {
    let (p, q) = line_through(z, w)?;
    let t = sending_to_axis(p, q);
    let (zz, ww) = (t.apply(z), t.apply(w));
    Ok(t.inverse().apply(Complex64::new(0.0, (zz.im * ww.im).sqrt())))
}

/// Attracting and repelling fixed points of a hyperbolic isometry.
pub fn axis_endpoints(h: &Isometry) -> Result<(BoundaryPoint, BoundaryPoint)> {
    let tr = h.trace();
    if tr.abs() <= 2.0 {
        return Err(Error::NotHyperbolic(tr.abs()));
    }
    let (p, q) = if h.c == 0.0 {
        (f64::INFINITY, h.b / (h.d - h.a))
    } else {
        // c z² + (d − a) z − b = 0, solved without cancellation.
        let disc = (tr * tr - 4.0).sqrt();
        let k = h.a - h.d;
        let big = (k + k.signum() * disc) / (2.0 * h.c);
        let big = if k == 0.0 { disc / (2.0 * h.c) } else { big };
        // Product of the roots is −b/c.
        let small = if big == 0.0 { -disc / (2.0 * h.c) } else { -h.b / h.c / big };
        (big, small)
    };
    if h.boundary_derivative(p) < h.boundary_derivative(q) {
        Ok((p, q))
    } else {
        Ok((q, p))
    }
}

/// Position of a boundary point on the circle, as an angle in `[0, 2π)`.
pub fn circle_angle(x: BoundaryPoint) -> f64 {
    if x.is_infinite() {
        PI
    } else {
        (2.0 * x.atan()).rem_euclid(2.0 * PI)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn half_turn_at_i() {
        let r = rotation_pi(Complex64::i());
        assert!(r.projective_distance(&Isometry::new(0.0, -1.0, 1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn half_turn_fixes_its_centre() {
        for z in [c(0.3, 0.7), c(-2.0, 5.0), c(10.0, 0.01)] {
            let r = rotation_pi(z);
            assert!((r.apply(z) - z).norm() < 1e-12 * z.norm().max(1.0));
            assert!(r.trace().abs() < 1e-9);
            assert!((r.det() - 1.0).abs() < 1e-12);
            assert!((r * r).projective_distance(&Isometry::IDENTITY) < 1e-9);
        }
    }

    #[test]
    fn distances() {
        assert!((distance(Complex64::i(), c(0.0, 1f64.exp())) - 1.0).abs() < 1e-15);
        let (z, w) = (c(0.2, 0.5), c(-1.0, 2.0));
        let g = Isometry::normalized(2.0, 1.0, 1.0, 3.0);
        assert!((distance(z, w) - distance(g.apply(z), g.apply(w))).abs() < 1e-12);
    }

    #[test]
    fn diagonal_axis() {
        let h = Isometry::new(2f64.exp(), 0.0, 0.0, (-2f64).exp());
        let (att, rep) = axis_endpoints(&h).unwrap();
        assert!(att.is_infinite() && rep == 0.0);
        let (att, rep) = axis_endpoints(&h.inverse()).unwrap();
        assert!(rep.is_infinite() && att == 0.0);
    }

    #[test]
    fn elliptic_has_no_axis() {
        assert!(matches!(axis_endpoints(&rotate(1.0)), Err(Error::NotHyperbolic(_))));
    }

    #[test]
    fn frames_walk_geodesics() {
        let f = rotate(0.7) * forward(1.3);
        assert!((distance(Complex64::i(), frame_point(&f)) - 1.3).abs() < 1e-12);
        let h = frame_heading(&rotate(0.7));
        assert!((h.arg() - (PI / 2.0 - 0.7)).abs() < 1e-12);
    }

    #[test]
    fn midpoint_and_foot() {
        let (z, w) = (c(0.4, 0.3), c(-0.7, 1.9));
        let m = midpoint(z, w).unwrap();
        assert!((distance(z, m) - distance(w, m)).abs() < 1e-12);
        assert!((distance(z, m) * 2.0 - distance(z, w)).abs() < 1e-12);
        let foot = perpendicular_foot((-1.0, 1.0), (2.0, 5.0)).unwrap();
        assert!((foot.norm() - 1.0).abs() < 1e-12);
        // The foot minimizes the distance to the second line.
        let to_l2 = sending_to_axis(2.0, 5.0);
        let dist_to_l2 = |z: Complex64| {
            let u = to_l2.apply(z);
            (u.re.abs() / u.im).asinh()
        };
        let theta = foot.arg();
        for eps in [1e-3, -1e-3] {
            let near = Complex64::from_polar(1.0, theta + eps);
            assert!(dist_to_l2(near) > dist_to_l2(foot));
        }
    }

    #[test]
    fn angles() {
        let z = Complex64::i();
        assert!((angle_at(z, c(0.0, 2.0), c(0.6, 0.8)) - PI / 2.0).abs() < 1e-12);
    }
}
