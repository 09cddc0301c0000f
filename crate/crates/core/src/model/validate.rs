use std::fmt;

use serde::Serialize;

/// A single broken invariant. Indices are zero-based; the messages print them
/// one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    NoSpecies,
    TooShort { len: usize, n: usize },
    LabelOutOfRange { position: usize, label: usize, n: usize },
    BulletCount { label: usize, count: usize },
    NotCyclicallyIncreasing { sequence: Vec<usize> },
    GridShape { rows: usize, cols: usize, n: usize },
    RowBulletCount { row: usize, count: usize },
    ColumnOccupancy { col: usize, count: usize },
    BlockCount { blocks: usize, marks: usize, n: usize },
    EmptyBlock { block: usize },
    ElementOutOfRange { block: usize, element: usize, len: usize },
    NotAPartition { element: usize, times: usize },
    MarkNotInBlock { block: usize, mark: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NoSpecies => write!(f, "n must be at least 1"),
            TooShort { len, n } => write!(f, "length {len} is shorter than n = {n}"),
            LabelOutOfRange { position, label, n } => {
                write!(f, "label {} at position {} exceeds n = {n}", label + 1, position + 1)
            }
            BulletCount { label, count } => {
                write!(f, "one particle of each type: found {count} copies of B{}", label + 1)
            }
            NotCyclicallyIncreasing { sequence } => write!(
                f,
                "bullets must be cyclically increasing, got {:?}",
                sequence.iter().map(|x| x + 1).collect::<Vec<_>>()
            ),
            GridShape { rows, cols, n } => {
                write!(f, "grid is {rows}x{cols}, expected n = {n} rows and at least n columns")
            }
            RowBulletCount { row, count } => {
                write!(f, "each row contains exactly one bullet: row {} has {count}", row + 1)
            }
            ColumnOccupancy { col, count } => {
                write!(f, "each column contains exactly one particle: column {} has {count}", col + 1)
            }
            BlockCount { blocks, marks, n } => {
                write!(f, "expected {n} blocks and marks, got {blocks} blocks and {marks} marks")
            }
            EmptyBlock { block } => write!(f, "block {} is empty", block + 1),
            ElementOutOfRange { block, element, len } => {
                write!(f, "block {} holds {} outside 1..={len}", block + 1, element + 1)
            }
            NotAPartition { element, times } => {
                write!(f, "blocks partition 1..L: element {} appears {times} times", element + 1)
            }
            MarkNotInBlock { block, mark } => {
                write!(f, "mark {} is not in block {}", mark + 1, block + 1)
            }
        }
    }
}

/// Number of cyclic descents of a sequence of distinct integers, counting the
/// wrap from last to first. A sequence is cyclically increasing iff this is at
/// most one.
pub(crate) fn cyclic_descents(seq: &[usize]) -> usize {
    if seq.len() < 2 {
        return 0;
    }
    (0..seq.len()).filter(|&i| seq[i] > seq[(i + 1) % seq.len()]).count()
}

/// Representations that can report their broken invariants.
pub trait Validate {
    fn violations(&self) -> Vec<Violation>;

    fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

impl Validate for super::ColoredWord {
    fn violations(&self) -> Vec<Violation> {
        super::ColoredWord::violations(self)
    }
}

impl Validate for super::TorusConfig {
    fn violations(&self) -> Vec<Violation> {
        super::TorusConfig::violations(self)
    }
}

impl Validate for super::MarkedPartition {
    fn violations(&self) -> Vec<Violation> {
        super::MarkedPartition::violations(self)
    }
}

/// Total validation entry point over any representation.
pub fn validate<T: Validate + ?Sized>(x: &T) -> std::result::Result<(), Vec<Violation>> {
    let v = x.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descents() {
        assert_eq!(cyclic_descents(&[0, 1, 2]), 1);
        assert_eq!(cyclic_descents(&[2, 0, 1]), 1);
        assert_eq!(cyclic_descents(&[0, 2, 1]), 2);
        assert_eq!(cyclic_descents(&[5]), 0);
    }
}
