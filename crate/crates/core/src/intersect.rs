//! Exact self-intersection numbers from the circular order on the ends of
//! the free group.
//!
//! The one-holed torus deformation retracts onto a wedge of two circles whose
//! ribbon structure is fixed by the boundary word `abAB`: around the vertex
//! the outgoing half-edges read `a, b, A, B` in cyclic order. A reduced
//! infinite word is an end of the Cayley tree, and this ribbon structure
//! gives a linear order on ends (the circle at infinity cut at a basepoint).
//!
//! For a primitive cyclic word `w` of length `n`, every shift `σ^i w` has an
//! axis through the base vertex with ends `P_i = (σ^i w)^∞` and
//! `Q_i = ((σ^i w)⁻¹)^∞`. Two such axes cross iff their end pairs are linked.
//! A crossing whose axes share a segment of `m` edges shows up at all `m + 1`
//! vertices of that segment, so a pair is counted only at the vertex where
//! the segment starts along the first axis; each crossing is then seen once
//! from each of the two axes.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::words::{ClassKey, CyclicWord, Letter};

/// Cyclic order of outgoing half-edges at the base vertex.
const CYCLE: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

fn cycle_pos(x: Letter) -> usize {
    match x {
        Letter::A => 0,
        Letter::B => 1,
        Letter::AInv => 2,
        Letter::BInv => 3,
    }
}

/// Rank (1..=4) of the first letter of a ray.
pub fn first_rank(x: Letter) -> u8 {
    cycle_pos(x) as u8 + 1
}

/// The three letters that may follow `prev`, in the order they are met when
/// turning around the vertex starting just after `inv(prev)`.
pub fn successors(prev: Letter) -> [Letter; 3] {
    let p = cycle_pos(prev.inv());
    [CYCLE[(p + 1) % 4], CYCLE[(p + 2) % 4], CYCLE[(p + 3) % 4]]
}

/// Rank (1..=3) of `next` among the successors of `prev`.
pub fn step_rank(prev: Letter, next: Letter) -> u8 {
    let d = (cycle_pos(next) + 4 - cycle_pos(prev.inv())) % 4;
    debug_assert!(d != 0, "unreduced ray");
    d as u8
}

/// A periodic reduced ray read off a cyclic word.
#[derive(Clone, Copy, Debug)]
pub struct Ray<'a> {
    period: &'a CyclicWord,
    shift: usize,
    forward: bool,
}

impl<'a> Ray<'a> {
    /// `(σ^shift w)^∞`.
    pub fn forward(period: &'a CyclicWord, shift: usize) -> Ray<'a> {
        Ray { period, shift: shift % period.len(), forward: true }
    }

    /// `((σ^shift w)⁻¹)^∞`.
    pub fn backward(period: &'a CyclicWord, shift: usize) -> Ray<'a> {
        Ray { period, shift: shift % period.len(), forward: false }
    }

    #[inline]
    pub fn letter(&self, k: usize) -> Letter {
        let n = self.period.len();
        if self.forward {
            self.period.at(self.shift + k)
        } else {
            self.period.at((self.shift + n - 1 + n - (k % n)) % n).inv()
        }
    }

    /// Period length of the underlying word.
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// The first `len` entries of the order key (t-sequence).
    pub fn order_key(&self, len: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let x = self.letter(k);
            out.push(if k == 0 { first_rank(x) } else { step_rank(self.letter(k - 1), x) });
        }
        out
    }
}

/// Position of two distinct rays in the linear order on ends.
pub fn compare_rays(r1: &Ray<'_>, r2: &Ray<'_>) -> Result<Ordering> {
    let horizon = 2 * r1.period_len() * r2.period_len();
    for k in 0..horizon {
        let (x, y) = (r1.letter(k), r2.letter(k));
        if x != y {
            let ord = if k == 0 {
                first_rank(x).cmp(&first_rank(y))
            } else {
                let prev = r1.letter(k - 1);
                step_rank(prev, x).cmp(&step_rank(prev, y))
            };
            return Ok(ord);
        }
    }
    Err(Error::EqualRays(r1.period.to_string()))
}

/// True iff the chords `c1` and `c2` alternate around the circle, given a
/// comparison that linearly orders the four endpoints.
pub fn linked_by<T, F>(c1: (&T, &T), c2: (&T, &T), mut cmp: F) -> Result<bool>
where
    F: FnMut(&T, &T) -> Result<Ordering>,
{
    let (lo, hi) = match cmp(c1.0, c1.1)? {
        Ordering::Less => (c1.0, c1.1),
        Ordering::Greater => (c1.1, c1.0),
        Ordering::Equal => return Err(Error::DegeneratePoints),
    };
    if cmp(c2.0, c2.1)? == Ordering::Equal {
        return Err(Error::DegeneratePoints);
    }
    let x = strictly_between(lo, c2.0, hi, &mut cmp)?;
    let y = strictly_between(lo, c2.1, hi, &mut cmp)?;
    Ok(x != y)
}

fn strictly_between<T, F>(lo: &T, p: &T, hi: &T, cmp: &mut F) -> Result<bool>
where
    F: FnMut(&T, &T) -> Result<Ordering>,
{
    let a = cmp(lo, p)?;
    let b = cmp(p, hi)?;
    if a == Ordering::Equal || b == Ordering::Equal {
        return Err(Error::DegeneratePoints);
    }
    Ok(a == Ordering::Less && b == Ordering::Less)
}

/// Chord alternation for totally ordered positions.
pub fn linked<T: Ord>(c1: (T, T), c2: (T, T)) -> Result<bool> {
    linked_by((&c1.0, &c1.1), (&c2.0, &c2.1), |a, b| Ok(a.cmp(b)))
}

/// Self-intersection number of a primitive class.
pub fn self_intersection(class: &ClassKey) -> Result<u32> {
    self_intersection_of_word(class.word())
}

pub fn self_intersection_of_word(w: &CyclicWord) -> Result<u32> {
    if !w.is_primitive() {
        return Err(Error::NonPrimitive(w.to_string()));
    }
    let n = w.len();
    let p: Vec<Ray<'_>> = (0..n).map(|i| Ray::forward(w, i)).collect();
    let q: Vec<Ray<'_>> = (0..n).map(|i| Ray::backward(w, i)).collect();
    let cmp = |a: &Ray<'_>, b: &Ray<'_>| compare_rays(a, b);
    let mut ordered = 0u32;
    for i in 0..n {
        let back = q[i].letter(0);
        for j in 0..n {
            if i == j || back == p[j].letter(0) || back == q[j].letter(0) {
                continue;
            }
            if linked_by((&p[i], &q[i]), (&p[j], &q[j]), cmp)? {
                ordered += 1;
            }
        }
    }
    debug_assert!(ordered.is_multiple_of(2));
    Ok(ordered / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn si(s: &str) -> u32 {
        self_intersection(&ClassKey::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn successor_lists() {
        use Letter::*;
        assert_eq!(successors(A), [BInv, A, B]);
        assert_eq!(successors(B), [A, B, AInv]);
        assert_eq!(successors(AInv), [B, AInv, BInv]);
        assert_eq!(successors(BInv), [AInv, BInv, A]);
        for prev in Letter::ALL {
            for (r, x) in successors(prev).into_iter().enumerate() {
                assert_eq!(step_rank(prev, x) as usize, r + 1);
            }
        }
    }

    #[test]
    fn ray_order_examples() {
        let ab: CyclicWord = "ab".parse().unwrap();
        let ba: CyclicWord = "ba".parse().unwrap();
        let ba_inv: CyclicWord = "BA".parse().unwrap();
        let r_ab = Ray::forward(&ab, 0);
        assert_eq!(r_ab.order_key(4), [1, 3, 1, 3]);
        assert_eq!(Ray::forward(&ba, 0).order_key(4), [2, 1, 3, 1]);
        assert_eq!(compare_rays(&r_ab, &Ray::forward(&ba, 0)), Ok(Ordering::Less));
        assert_eq!(compare_rays(&r_ab, &Ray::forward(&ba_inv, 0)), Ok(Ordering::Less));
        assert!(matches!(compare_rays(&r_ab, &r_ab), Err(Error::EqualRays(_))));
    }

    #[test]
    fn backward_ray_reads_inverse() {
        let w: CyclicWord = "aabAB".parse().unwrap();
        for i in 0..w.len() {
            let inv = w.rotate(i).inverse();
            let r = Ray::backward(&w, i);
            for k in 0..12 {
                assert_eq!(r.letter(k), inv.at(k));
            }
        }
    }

    #[test]
    fn chord_alternation() {
        assert_eq!(linked((1, 3), (2, 4)), Ok(true));
        assert_eq!(linked((1, 2), (3, 4)), Ok(false));
        assert_eq!(linked((1, 4), (2, 3)), Ok(false));
        assert_eq!(linked((4, 1), (3, 2)), Ok(false));
        assert_eq!(linked((3, 1), (4, 2)), Ok(true));
        assert_eq!(linked((1, 3), (3, 4)), Err(Error::DegeneratePoints));
    }

    #[test]
    fn table_values() {
        assert_eq!(si("a"), 0);
        assert_eq!(si("abAB"), 0);
        assert_eq!(si("aabAB"), 1);
        assert_eq!(si("abaB"), 1);
        assert_eq!(si("aaabb"), 2);
        assert_eq!(si("aabaaB"), 3);
        assert_eq!(si("aabAAB"), 2);
        assert_eq!(si("aabbAB"), 3);
        assert_eq!(si("aaaabb"), 3);
    }

    #[test]
    fn powers_are_rejected() {
        let k = ClassKey::parse("abab").unwrap();
        assert!(matches!(self_intersection(&k), Err(Error::NonPrimitive(_))));
        let k = ClassKey::parse("abABabAB").unwrap();
        assert!(matches!(self_intersection(&k), Err(Error::NonPrimitive(_))));
    }

    #[test]
    fn invariant_under_rotation_and_inversion() {
        for key in crate::words::enumerate_classes(8).unwrap().filter(|k| k.is_primitive()) {
            let s = self_intersection(&key).unwrap();
            let w = key.word();
            for i in 0..w.len() {
                assert_eq!(self_intersection_of_word(&w.rotate(i)).unwrap(), s);
                assert_eq!(self_intersection_of_word(&w.inverse().rotate(i)).unwrap(), s);
            }
        }
    }
}
