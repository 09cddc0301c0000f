//! State representations: colored words (canonical), torus grids and marked
//! set partitions, with the bijections between them.

mod enumerate;
mod partition;
mod symmetry;
mod torus;
mod validate;
mod word;

pub(crate) use enumerate::check_sizes;
pub use enumerate::{
    binomial, enumerate_full, enumerate_restricted, enumerate_restricted_by_placement, enumerate_restricted_capped,
    full_count, restricted_count, state_index,
};
pub use partition::MarkedPartition;
pub use symmetry::{reflect, rotate, symmetry_transform, to_restricted, vertical_shift, SymmetryKind};
pub use torus::{CellState, TorusConfig};
pub use validate::{validate, Validate, Violation};
pub use word::{ColoredWord, Symbol};

use crate::Result;

/// Either side of the word/torus bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordOrTorus {
    Word(ColoredWord),
    Torus(TorusConfig),
}

/// Maps a word to its torus and a torus to its word.
pub fn word_torus_iso(x: &WordOrTorus) -> Result<WordOrTorus> {
    match x {
        WordOrTorus::Word(w) => TorusConfig::from_word(w).map(WordOrTorus::Torus),
        WordOrTorus::Torus(t) => t.to_word().map(WordOrTorus::Word),
    }
}

/// Either side of the word/marked-partition bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordOrPartition {
    Word(ColoredWord),
    Partition(MarkedPartition),
}

pub fn word_partition_iso(x: &WordOrPartition) -> Result<WordOrPartition> {
    match x {
        WordOrPartition::Word(w) => MarkedPartition::from_word(w).map(WordOrPartition::Partition),
        WordOrPartition::Partition(p) => p.to_word().map(WordOrPartition::Word),
    }
}
