use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::validate::{cyclic_descents, Violation};
use crate::{Error, Result};

/// One letter of a colored word. Labels are zero-based row indices.
///
/// The derived order puts every bullet before every box, and orders letters of
/// the same kind by label. Enumeration output is sorted with this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Bullet(usize),
    Box(usize),
}

impl Symbol {
    pub fn label(self) -> usize {
        match self {
            Symbol::Bullet(k) | Symbol::Box(k) => k,
        }
    }

    pub fn is_bullet(self) -> bool {
        matches!(self, Symbol::Bullet(_))
    }

    pub fn is_box(self) -> bool {
        matches!(self, Symbol::Box(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::Bullet(k) => write!(f, "B{}", k + 1),
            Symbol::Box(k) => write!(f, "b{}", k + 1),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, num) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let label: usize = num.parse().map_err(|_| Error::Parse(format!("bad letter {s:?}")))?;
        if label == 0 {
            return Err(Error::Parse(format!("labels are one-based, got {s:?}")));
        }
        match head {
            "B" => Ok(Symbol::Bullet(label - 1)),
            "b" => Ok(Symbol::Box(label - 1)),
            _ => Err(Error::Parse(format!("bad letter {s:?}"))),
        }
    }
}

/// A configuration of the colored one-dimensional process: a ring of `L`
/// letters with exactly one `Bullet(k)` per label, bullets in cyclic label
/// order, and arbitrary boxes elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredWord {
    n: usize,
    letters: Vec<Symbol>,
}

impl ColoredWord {
    /// Builds a word after checking every invariant.
    pub fn new(n: usize, letters: Vec<Symbol>) -> Result<Self> {
        let w = ColoredWord { n, letters };
        let v = w.violations();
        if v.is_empty() {
            Ok(w)
        } else {
            Err(Error::Validation(v))
        }
    }

    /// Builds a word without validation. Callers must uphold the invariants.
    pub(crate) fn from_letters_unchecked(n: usize, letters: Vec<Symbol>) -> Self {
        debug_assert!(ColoredWord { n, letters: letters.clone() }.violations().is_empty());
        ColoredWord { n, letters }
    }

    /// Builds a word with no checks at all, for validation tests.
    pub fn raw(n: usize, letters: Vec<Symbol>) -> Self {
        ColoredWord { n, letters }
    }

    /// The special configuration `B1 .. Bn bn .. bn`.
    pub fn tau0(l: usize, n: usize) -> Result<Self> {
        if n == 0 || n > l {
            return Err(Error::domain(format!("need 1 <= n <= L, got L={l}, n={n}")));
        }
        let mut letters: Vec<Symbol> = (0..n).map(Symbol::Bullet).collect();
        letters.extend(std::iter::repeat_n(Symbol::Box(n - 1), l - n));
        Ok(ColoredWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.letters
    }

    /// Restricted form: the first letter is `Bullet(0)`.
    pub fn is_restricted(&self) -> bool {
        self.letters.first() == Some(&Symbol::Bullet(0))
    }

    /// Position of each bullet, indexed by label.
    pub fn bullet_positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n];
        for (j, s) in self.letters.iter().enumerate() {
            if let Symbol::Bullet(k) = *s {
                if k < self.n {
                    pos[k] = j;
                }
            }
        }
        pos
    }

    /// For every position, the label of the nearest bullet strictly to the
    /// left (cyclically); for bullet positions, the bullet's own label.
    ///
    /// A box at position `j` sits in the gap `C_k` with `k = gap_labels()[j]`.
    pub fn gap_labels(&self) -> Vec<usize> {
        let l = self.len();
        let mut out = vec![0; l];
        let Some(start) = self.letters.iter().position(|s| s.is_bullet()) else {
            return out;
        };
        let mut current = self.letters[start].label();
        for step in 0..l {
            let j = (start + step) % l;
            if let Symbol::Bullet(k) = self.letters[j] {
                current = k;
            }
            out[j] = current;
        }
        out
    }

    /// Every invariant violation, in a fixed order. Empty iff valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let l = self.letters.len();
        if self.n == 0 {
            out.push(Violation::NoSpecies);
            return out;
        }
        if l < self.n {
            out.push(Violation::TooShort { len: l, n: self.n });
        }
        let mut counts = vec![0usize; self.n];
        for (j, s) in self.letters.iter().enumerate() {
            if s.label() >= self.n {
                out.push(Violation::LabelOutOfRange { position: j, label: s.label(), n: self.n });
            } else if s.is_bullet() {
                counts[s.label()] += 1;
            }
        }
        for (k, &c) in counts.iter().enumerate() {
            if c != 1 {
                out.push(Violation::BulletCount { label: k, count: c });
            }
        }
        if out.is_empty() {
            let order: Vec<usize> = self.letters.iter().filter(|s| s.is_bullet()).map(|s| s.label()).collect();
            // labels read left to right must be a rotation of 0..n
            if cyclic_descents(&order) > 1 {
                out.push(Violation::NotCyclicallyIncreasing { sequence: order });
            }
        }
        out
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for ColoredWord {
    type Err = Error;

    /// Parses `"B1 b3 b3 b4 B2"`. The species count `n` is the number of
    /// bullets in the string.
    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<Symbol> = s.split_whitespace().map(str::parse).collect::<Result<_>>()?;
        let n = letters.iter().filter(|s| s.is_bullet()).count();
        ColoredWord::new(n, letters)
    }
}

impl Serialize for ColoredWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColoredWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_roundtrip() {
        let s = "B1 b3 b3 b4 B2 b2 B3 b3 B4 b1";
        let w: ColoredWord = s.parse().unwrap();
        assert_eq!(w.n(), 4);
        assert_eq!(w.len(), 10);
        assert_eq!(w.to_string(), s);
        assert!(w.is_restricted());
    }

    #[test]
    fn two_bullet_one_is_rejected() {
        let w = ColoredWord::raw(2, vec![Symbol::Bullet(0), Symbol::Bullet(0), Symbol::Box(1)]);
        let v = w.violations();
        assert!(v.iter().any(|x| x.to_string().contains("one particle of each type")));
    }

    #[test]
    fn bullets_out_of_cyclic_order() {
        let w = ColoredWord::raw(3, vec![Symbol::Bullet(0), Symbol::Bullet(2), Symbol::Bullet(1)]);
        let v = w.violations();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().contains("cyclically increasing"));
    }

    #[test]
    fn rotated_bullets_are_fine() {
        let w: ColoredWord = "b2 B2 B3 b1 B1".parse().unwrap();
        assert!(!w.is_restricted());
        assert_eq!(w.bullet_positions(), vec![4, 1, 2]);
    }

    #[test]
    fn gap_labels_wrap_the_seam() {
        let w: ColoredWord = "b2 B1 b1 B2".parse().unwrap();
        assert_eq!(w.gap_labels(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn bad_tokens() {
        assert!("B0".parse::<Symbol>().is_err());
        assert!("x1".parse::<Symbol>().is_err());
        assert!("B".parse::<Symbol>().is_err());
        assert!("B1 b3".parse::<ColoredWord>().is_err());
    }
}
