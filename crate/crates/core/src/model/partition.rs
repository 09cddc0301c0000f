use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::validate::{cyclic_descents, Violation};
use super::{ColoredWord, Symbol};
use crate::{Error, Result};

/// An ordered set partition `B_1..B_n` of the sites `0..L` with one marked
/// element per block; the marks are cyclically increasing.
///
/// Block `i` holds the sites occupied by row `i` of the torus; the mark is the
/// site of that row's bullet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MarkedPartition {
    len: usize,
    blocks: Vec<BTreeSet<usize>>,
    marks: Vec<usize>,
}

impl MarkedPartition {
    pub fn new(len: usize, blocks: Vec<BTreeSet<usize>>, marks: Vec<usize>) -> Result<Self> {
        let p = MarkedPartition { len, blocks, marks };
        let v = p.violations();
        if v.is_empty() {
            Ok(p)
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn raw(len: usize, blocks: Vec<BTreeSet<usize>>, marks: Vec<usize>) -> Self {
        MarkedPartition { len, blocks, marks }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn violations(&self) -> Vec<Violation> {
        let n = self.blocks.len();
        let mut out = Vec::new();
        if n == 0 || self.marks.len() != n {
            out.push(Violation::BlockCount { blocks: n, marks: self.marks.len(), n: n.max(1) });
            return out;
        }
        let mut seen = vec![0usize; self.len];
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                out.push(Violation::EmptyBlock { block: b });
            }
            for &e in block {
                if e >= self.len {
                    out.push(Violation::ElementOutOfRange { block: b, element: e, len: self.len });
                } else {
                    seen[e] += 1;
                }
            }
            if !block.contains(&self.marks[b]) {
                out.push(Violation::MarkNotInBlock { block: b, mark: self.marks[b] });
            }
        }
        for (e, &times) in seen.iter().enumerate() {
            if times != 1 {
                out.push(Violation::NotAPartition { element: e, times });
            }
        }
        if out.is_empty() && cyclic_descents(&self.marks) > 1 {
            out.push(Violation::NotCyclicallyIncreasing { sequence: self.marks.clone() });
        }
        out
    }

    /// `B_i` = sites of all `Box(i)` plus the site of `Bullet(i)`, which is
    /// the mark.
    pub fn from_word(w: &ColoredWord) -> Result<Self> {
        let v = w.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        let mut blocks = vec![BTreeSet::new(); w.n()];
        let mut marks = vec![0; w.n()];
        for (j, s) in w.letters().iter().enumerate() {
            blocks[s.label()].insert(j);
            if let Symbol::Bullet(k) = *s {
                marks[k] = j;
            }
        }
        Ok(MarkedPartition { len: w.len(), blocks, marks })
    }

    pub fn to_word(&self) -> Result<ColoredWord> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        let mut letters = vec![Symbol::Box(0); self.len];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                letters[e] = if e == self.marks[i] { Symbol::Bullet(i) } else { Symbol::Box(i) };
            }
        }
        ColoredWord::new(self.blocks.len(), letters)
    }
}

impl fmt::Display for MarkedPartition {
    /// One-based, marks starred: `({1*,10}, {5*,6})`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (t, &e) in block.iter().enumerate() {
                if t > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", e + 1)?;
                if e == self.marks[i] {
                    f.write_str("*")?;
                }
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn running_example() {
        let w: ColoredWord = "B1 b3 b3 b4 B2 b2 B3 b3 B4 b1".parse().unwrap();
        let p = MarkedPartition::from_word(&w).unwrap();
        assert_eq!(p.blocks(), &[set(&[1, 10]), set(&[5, 6]), set(&[2, 3, 7, 8]), set(&[4, 9])]);
        assert_eq!(p.marks(), &[0, 4, 6, 8]);
        assert_eq!(p.to_string(), "({1*,10}, {5*,6}, {2,3,7*,8}, {4,9*})");
        assert_eq!(p.to_word().unwrap(), w);
    }

    #[test]
    fn single_block() {
        let w: ColoredWord = "B1 b1 b1 b1".parse().unwrap();
        let p = MarkedPartition::from_word(&w).unwrap();
        assert_eq!(p.blocks(), &[set(&[1, 2, 3, 4])]);
        assert_eq!(p.marks(), &[0]);
    }

    #[test]
    fn overlapping_blocks_rejected() {
        let p = MarkedPartition::raw(3, vec![set(&[1, 2]), set(&[2, 3])], vec![0, 2]);
        assert!(p.violations().iter().any(|v| matches!(v, Violation::NotAPartition { element: 1, times: 2 })));
    }
}
