//! Cyclic words over `a, A, b, B` and canonical unoriented class keys.
//!
//! `A` and `B` are the inverses of `a` and `b`. A [`CyclicWord`] is a
//! cyclically reduced ring of letters; a [`ClassKey`] is the least word, in
//! the letter order `a < A < b < B`, over all rotations of the word and of
//! its inverse. Two class keys are equal exactly when the unoriented free
//! homotopy classes agree.

mod totient;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use totient::{summatory, totient, totient_of_quotient, Totient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    AInv = 1,
    B = 2,
    BInv = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    #[inline]
    pub fn inv(self) -> Letter {
        Letter::from_code(self as u8 ^ 1)
    }

    #[inline]
    pub fn from_code(code: u8) -> Letter {
        match code & 3 {
            0 => Letter::A,
            1 => Letter::AInv,
            2 => Letter::B,
            _ => Letter::BInv,
        }
    }

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'A' => Some(Letter::AInv),
            'b' => Some(Letter::B),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    /// True for `a` and `A`.
    #[inline]
    pub fn is_a(self) -> bool {
        (self as u8) < 2
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Parses a plain-text word; anything outside `{a, A, b, B}` is rejected.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| {
            Letter::from_char(c).ok_or_else(|| Error::InvalidLetter { letter: c, input: s.to_string() })
        })
        .collect()
}

pub fn letters_to_string(letters: &[Letter]) -> String {
    letters.iter().map(|l| l.to_char()).collect()
}

/// Free reduction of a linear word (cancels adjacent `x x⁻¹` pairs).
pub fn free_reduce(raw: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(raw.len());
    for &x in raw {
        if out.last() == Some(&x.inv()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

/// Inverse of a linear word: reverse the sequence and invert each letter.
pub fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|x| x.inv()).collect()
}

/// A nonempty cyclically reduced word, read as a ring of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Wraps letters that are already cyclically reduced.
    pub fn from_reduced(letters: Vec<Letter>) -> Option<CyclicWord> {
        if is_cyclically_reduced(&letters) {
            Some(CyclicWord { letters })
        } else {
            None
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rotate(&self, i: usize) -> CyclicWord {
        let mut letters = self.letters.clone();
        letters.rotate_left(i % self.letters.len());
        CyclicWord { letters }
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord { letters: inverse_letters(&self.letters) }
    }

    /// Letter at cyclic position `i`.
    #[inline]
    pub fn at(&self, i: usize) -> Letter {
        self.letters[i % self.letters.len()]
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(self)
    }

    pub fn canonical(&self) -> ClassKey {
        canonical(self)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&letters_to_string(&self.letters))
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<CyclicWord> {
        reduce(&parse_letters(s)?).map_err(|_| Error::EmptyAfterReduction(s.to_string()))
    }
}

pub fn is_cyclically_reduced(w: &[Letter]) -> bool {
    let n = w.len();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    (0..n).all(|i| w[(i + 1) % n] != w[i].inv())
}

/// Freely and cyclically reduces `raw`.
pub fn reduce(raw: &[Letter]) -> Result<CyclicWord> {
    let w = free_reduce(raw);
    let (mut lo, mut hi) = (0, w.len());
    while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
        lo += 1;
        hi -= 1;
    }
    if lo == hi {
        return Err(Error::EmptyAfterReduction(letters_to_string(raw)));
    }
    Ok(CyclicWord { letters: w[lo..hi].to_vec() })
}

/// Start index of the lexicographically least rotation (two-pointer scan,
/// linear time).
pub fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let x = s[(i + k) % n];
        let y = s[(j + k) % n];
        if x == y {
            k += 1;
            continue;
        }
        if x > y {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

fn rotated(s: &[Letter], start: usize) -> impl Iterator<Item = Letter> + '_ {
    s[start..].iter().chain(s[..start].iter()).copied()
}

/// Canonical unoriented class key of a cyclically reduced word.
pub fn canonical(w: &CyclicWord) -> ClassKey {
    let fwd = &w.letters;
    let inv = inverse_letters(fwd);
    let i = least_rotation(fwd);
    let j = least_rotation(&inv);
    let letters = if rotated(fwd, i).cmp(rotated(&inv, j)) == Ordering::Greater {
        rotated(&inv, j).collect()
    } else {
        rotated(fwd, i).collect()
    };
    ClassKey(CyclicWord { letters })
}

/// True iff `w` is not a proper power, i.e. no proper rotation fixes it.
pub fn is_primitive(w: &CyclicWord) -> bool {
    let s = &w.letters;
    let n = s.len();
    (1..n).filter(|d| n.is_multiple_of(*d)).all(|d| (0..n).any(|i| s[i] != s[(i + d) % n]))
}

/// Canonical unoriented free homotopy class.
///
/// Ordered shortlex: by word length, then lexicographically in `a < A < b < B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassKey(CyclicWord);

impl ClassKey {
    pub fn word(&self) -> &CyclicWord {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0.letters
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.0)
    }

    /// Parses, reduces and canonicalizes a word.
    pub fn parse(s: &str) -> Result<ClassKey> {
        Ok(canonical(&s.parse::<CyclicWord>()?))
    }
}

impl Ord for ClassKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for ClassKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for ClassKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassKey> {
        ClassKey::parse(s)
    }
}

impl Serialize for ClassKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ClassKey::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Upper bound on the number of reduced linear words the class enumerator
/// may visit.
pub const DEFAULT_CLASS_BUDGET: usize = 100_000_000;

/// Number of reduced linear words of length exactly `n` (`4·3^(n-1)`), saturating.
pub fn reduced_word_count(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    (1..n).fold(4usize, |acc, _| acc.saturating_mul(3))
}

/// Every class key of word length `<= max_len`, in shortlex order. Proper
/// powers are included; callers filter with [`ClassKey::is_primitive`].
pub fn enumerate_classes(max_len: usize) -> Result<impl Iterator<Item = ClassKey>> {
    enumerate_classes_with_budget(max_len, DEFAULT_CLASS_BUDGET)
}

pub fn enumerate_classes_with_budget(
    max_len: usize,
    budget: usize,
) -> Result<impl Iterator<Item = ClassKey>> {
    let visited = (1..=max_len).fold(0usize, |acc, n| acc.saturating_add(reduced_word_count(n)));
    if visited > budget {
        return Err(Error::CapTooLarge { cap: max_len, budget });
    }
    Ok((1..=max_len).flat_map(classes_of_length))
}

/// Class keys of length exactly `n`, in lexicographic order.
pub fn classes_of_length(n: usize) -> Vec<ClassKey> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    // A canonical word starts with `a`, or with `b` when it has no `a`/`A` at all.
    for first in [Letter::A, Letter::B] {
        buf.clear();
        buf.push(first);
        extend_canonical(n, first == Letter::B, &mut buf, &mut out);
    }
    out
}

fn extend_canonical(n: usize, b_only: bool, buf: &mut Vec<Letter>, out: &mut Vec<ClassKey>) {
    if buf.len() == n {
        if let Some(w) = CyclicWord::from_reduced(buf.clone()) {
            let key = canonical(&w);
            if key.letters() == buf.as_slice() {
                out.push(key);
            }
        }
        return;
    }
    let last = *buf.last().expect("nonempty prefix");
    for x in Letter::ALL {
        if x == last.inv() || (b_only && x.is_a()) {
            continue;
        }
        buf.push(x);
        extend_canonical(n, b_only, buf, out);
        buf.pop();
    }
}
