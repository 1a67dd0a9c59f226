//! Mapping class group orbits of curves, enumerated by word length.
//!
//! The extended mapping class group of the one-holed torus acts on
//! unoriented classes through `Out(F₂)`, generated by the elementary Nielsen
//! moves `a ↦ ab`, `a ↦ aB`, `b ↦ ba`, `b ↦ bA`, the swap `a ↔ b` and the two
//! inversions. Modulo inner automorphisms the four moves are exactly the
//! Whitehead automorphisms of rank two, so peak reduction applies: any two
//! orbit members of length `<= cap` are joined by a chain of moves whose
//! intermediate words also have length `<= cap`. Breadth-first search under a
//! cap is therefore complete.

mod classify;
mod fit;
mod formula;

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{canonical, free_reduce, inverse_letters, parse_letters, reduce, ClassKey, Letter};

pub use classify::{classify, classify_with, Classification};
pub use fit::{fit_totient_formula, fit_with, recovers_row, FitConfig};
pub use formula::{
    builtin_formula_table, growth_coefficient, verify_formula, verify_orbit, FormulaRow,
    FormulaTable, LengthCheck, Support, TotientFormula, Verdict, VerificationReport, FORMULA_TABLE_JSON,
};

/// An automorphism of the free group on `a, b`, given by the images of the
/// generators. Only invertible maps can be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    name: String,
    image_a: Vec<Letter>,
    image_b: Vec<Letter>,
}

impl Automorphism {
    fn from_images(name: &str, a: &str, b: &str) -> Automorphism {
        Automorphism {
            name: name.to_string(),
            image_a: parse_letters(a).expect("valid image"),
            image_b: parse_letters(b).expect("valid image"),
        }
    }

    pub fn identity() -> Automorphism {
        Automorphism::from_images("id", "a", "b")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn image(&self, x: Letter) -> Vec<Letter> {
        match x {
            Letter::A => self.image_a.clone(),
            Letter::AInv => inverse_letters(&self.image_a),
            Letter::B => self.image_b.clone(),
            Letter::BInv => inverse_letters(&self.image_b),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let subst = |w: &[Letter]| free_reduce(&w.iter().flat_map(|&x| self.image(x)).collect::<Vec<_>>());
        Automorphism {
            name: format!("{}∘{}", self.name, other.name),
            image_a: subst(&other.image_a),
            image_b: subst(&other.image_b),
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Elementary Nielsen moves, the swap and the inversions.
pub fn whitehead_generators() -> Vec<Automorphism> {
    vec![
        Automorphism::from_images("a->ab", "ab", "b"),
        Automorphism::from_images("a->aB", "aB", "b"),
        Automorphism::from_images("b->ba", "a", "ba"),
        Automorphism::from_images("b->bA", "a", "bA"),
        Automorphism::from_images("a<->b", "b", "a"),
        Automorphism::from_images("a->A", "A", "b"),
        Automorphism::from_images("b->B", "a", "B"),
    ]
}

/// Image of a class: substitute, reduce, canonicalize.
pub fn apply(phi: &Automorphism, class: &ClassKey) -> ClassKey {
    let raw: Vec<Letter> = class.letters().iter().flat_map(|&x| phi.image(x)).collect();
    let reduced = reduce(&raw).expect("automorphisms do not kill nontrivial classes");
    canonical(&reduced)
}

/// Limits for orbit enumeration.
#[derive(Clone, Copy, Debug)]
pub struct OrbitOptions {
    pub max_members: usize,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { max_members: 5_000_000 }
    }
}

/// A capped orbit: every class of word length `<= cap` in the orbit of `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub seed: ClassKey,
    pub cap: usize,
    /// Sorted shortlex.
    pub members: Vec<ClassKey>,
    pub complete: bool,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, key: &ClassKey) -> bool {
        self.members.binary_search(key).is_ok()
    }

    /// Shortest member (first in shortlex order).
    pub fn min_representative(&self) -> &ClassKey {
        &self.members[0]
    }

    /// Closure check: every generator image of length `<= cap` is a member.
    pub fn is_closed(&self) -> bool {
        let gens = whitehead_generators();
        self.members.par_iter().all(|m| {
            gens.iter().map(|g| apply(g, m)).filter(|x| x.len() <= self.cap).all(|x| self.contains(&x))
        })
    }

    pub fn count_series(&self) -> CountSeries {
        count_series(self)
    }
}

pub fn enumerate_orbit(seed: &ClassKey, cap: usize) -> Result<Orbit> {
    enumerate_orbit_with(seed, cap, OrbitOptions::default())
}

/// Breadth-first closure of `seed` under [`whitehead_generators`], keeping
/// only images of word length `<= cap`. Frontier expansion runs on the
/// ambient rayon pool; the member list is sorted, so the result does not
/// depend on scheduling.
pub fn enumerate_orbit_with(seed: &ClassKey, cap: usize, opts: OrbitOptions) -> Result<Orbit> {
    if crate::words::canonical(seed.word()) != *seed {
        return Err(Error::SeedNotReduced(seed.to_string()));
    }
    if seed.len() > cap {
        return Err(Error::SeedAboveCap { seed: seed.to_string(), len: seed.len(), cap });
    }
    let gens = whitehead_generators();
    let mut seen: HashSet<ClassKey> = HashSet::new();
    seen.insert(seed.clone());
    let mut frontier = vec![seed.clone()];
    while !frontier.is_empty() {
        let images: Vec<ClassKey> = frontier
            .par_iter()
            .flat_map_iter(|m| gens.iter().map(move |g| apply(g, m)).filter(|x| x.len() <= cap))
            .collect();
        let mut next = Vec::new();
        for x in images {
            if !seen.contains(&x) {
                seen.insert(x.clone());
                next.push(x);
            }
        }
        if seen.len() > opts.max_members {
            return Err(Error::CapTooLarge { cap, budget: opts.max_members });
        }
        frontier = next;
    }
    let mut members: Vec<ClassKey> = seen.into_iter().collect();
    members.par_sort_unstable();
    Ok(Orbit { seed: seed.clone(), cap, members, complete: true })
}

/// Per-length counts `C(ℓ)` of a capped orbit and their running sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    counts: Vec<u64>,
}

impl CountSeries {
    /// `counts[ℓ - 1]` is the number of classes of word length `ℓ`.
    pub fn from_counts(counts: Vec<u64>) -> CountSeries {
        let mut c = Vec::with_capacity(counts.len() + 1);
        c.push(0);
        c.extend(counts);
        CountSeries { counts: c }
    }

    pub fn cap(&self) -> usize {
        self.counts.len() - 1
    }

    /// `C(ℓ)`; zero outside `1..=cap`.
    pub fn count(&self, l: usize) -> u64 {
        self.counts.get(l).copied().unwrap_or(0)
    }

    /// `Σ_{n<=ℓ} C(n)`.
    pub fn cumulative(&self, l: usize) -> u64 {
        self.counts.iter().take(l + 1).sum()
    }

    /// Rows `(ℓ, C(ℓ), cumulative)` for `ℓ = 1..=cap`.
    pub fn rows(&self) -> Vec<(usize, u64, u64)> {
        let mut acc = 0;
        (1..=self.cap())
            .map(|l| {
                acc += self.counts[l];
                (l, self.counts[l], acc)
            })
            .collect()
    }
}

pub fn count_series(orbit: &Orbit) -> CountSeries {
    let mut counts = vec![0u64; orbit.cap + 1];
    for m in &orbit.members {
        counts[m.len()] += 1;
    }
    CountSeries { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::self_intersection;
    use crate::words::{enumerate_classes, totient};

    fn key(s: &str) -> ClassKey {
        ClassKey::parse(s).unwrap()
    }

    fn gen(name: &str) -> Automorphism {
        whitehead_generators().into_iter().find(|g| g.name() == name).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(apply(&gen("a->ab"), &key("a")).to_string(), "ab");
        assert_eq!(apply(&gen("a->ab"), &key("b")).to_string(), "b");
        assert_eq!(apply(&gen("a->ab"), &key("abaB")).to_string(), "aabb");
        assert_eq!(apply(&gen("a->A"), &key("a")).to_string(), "a");
        assert_eq!(apply(&Automorphism::identity(), &key("aabAB")), key("aabAB"));
    }

    #[test]
    fn swap_is_an_involution() {
        let swap = gen("a<->b");
        for k in enumerate_classes(8).unwrap() {
            assert_eq!(apply(&swap, &apply(&swap, &k)), k);
        }
    }

    #[test]
    fn moves_have_inverses_on_classes() {
        let pairs = [("a->ab", "a->aB"), ("b->ba", "b->bA")];
        for (f, g) in pairs {
            let (f, g) = (gen(f), gen(g));
            for k in enumerate_classes(7).unwrap() {
                assert_eq!(apply(&g, &apply(&f, &k)), k);
                assert_eq!(apply(&f.compose(&g), &k), k);
            }
        }
    }

    #[test]
    fn boundary_class_is_fixed() {
        let o = enumerate_orbit(&key("abAB"), 20).unwrap();
        assert_eq!(o.members, vec![key("abAB")]);
    }

    #[test]
    fn simple_orbit_counts() {
        let o = enumerate_orbit(&key("a"), 3).unwrap();
        assert_eq!(o.len(), 8);
        let o = enumerate_orbit(&key("a"), 60).unwrap();
        let s = o.count_series();
        for l in 1..=60 {
            assert_eq!(s.count(l), 2 * totient(l as i64), "l={l}");
        }
        assert_eq!(s.count(6), 4);
        assert!(o.is_closed());
    }

    #[test]
    fn selfint_one_counts() {
        let s = enumerate_orbit(&key("aabAB"), 14).unwrap().count_series();
        assert_eq!(s.count(9), 16);
        let s = enumerate_orbit(&key("abaB"), 14).unwrap().count_series();
        assert_eq!(s.count(4), 4);
        assert_eq!(s.count(3), 0);
    }

    #[test]
    fn cumulative_rows() {
        let s = enumerate_orbit(&key("a"), 6).unwrap().count_series();
        assert_eq!(
            s.rows(),
            vec![(1, 2, 2), (2, 2, 4), (3, 4, 8), (4, 4, 12), (5, 8, 20), (6, 4, 24)]
        );
    }

    #[test]
    fn orbit_members_share_si() {
        for seed in ["a", "aabAB", "abaB", "aaabb", "aabaaB", "aabAbaBAb"] {
            let o = enumerate_orbit(&key(seed), 20).unwrap();
            let s0 = self_intersection(&o.seed).unwrap();
            assert!(o.members.iter().all(|m| self_intersection(m).unwrap() == s0), "{seed}");
        }
    }

    #[test]
    fn seed_errors() {
        let k = key("aabAB");
        assert!(matches!(enumerate_orbit(&k, 3), Err(Error::SeedAboveCap { .. })));
        let opts = OrbitOptions { max_members: 10 };
        assert!(matches!(
            enumerate_orbit_with(&key("a"), 30, opts),
            Err(Error::CapTooLarge { .. })
        ));
    }
}
