use serde::{Deserialize, Serialize};

use super::{ColoredWord, Symbol};

/// Torus symmetries acting on words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryKind {
    /// Cyclic shift of sites by `s` to the right.
    Rotate(usize),
    /// Row relabelling `k -> k-1 (mod n)`.
    VerticalShift,
    /// Rotation of the torus by a half turn: reverse the sites and relabel
    /// `k -> n-1-k`. Exchanges forward and backward moves.
    Reflect,
}

pub fn symmetry_transform(w: &ColoredWord, kind: SymmetryKind) -> ColoredWord {
    match kind {
        SymmetryKind::Rotate(s) => rotate(w, s),
        SymmetryKind::VerticalShift => vertical_shift(w),
        SymmetryKind::Reflect => reflect(w),
    }
}

/// Moves the letter at site `j` to site `j + s (mod L)`.
pub fn rotate(w: &ColoredWord, s: usize) -> ColoredWord {
    let l = w.len();
    if l == 0 {
        return w.clone();
    }
    let s = s % l;
    let letters = w.letters();
    let rotated = (0..l).map(|j| letters[(j + l - s) % l]).collect();
    ColoredWord::from_letters_unchecked(w.n(), rotated)
}

/// The rotation that puts `Bullet(0)` at site 0.
pub fn to_restricted(w: &ColoredWord) -> ColoredWord {
    let p = w.bullet_positions()[0];
    rotate(w, w.len() - p)
}

pub fn vertical_shift(w: &ColoredWord) -> ColoredWord {
    let n = w.n();
    let shifted = w
        .letters()
        .iter()
        .map(|s| match *s {
            Symbol::Bullet(k) => Symbol::Bullet((k + n - 1) % n),
            Symbol::Box(k) => Symbol::Box((k + n - 1) % n),
        })
        .collect();
    ColoredWord::from_letters_unchecked(n, shifted)
}

pub fn reflect(w: &ColoredWord) -> ColoredWord {
    let n = w.n();
    let flip = |k: usize| n - 1 - k;
    let letters = w
        .letters()
        .iter()
        .rev()
        .map(|s| match *s {
            Symbol::Bullet(k) => Symbol::Bullet(flip(k)),
            Symbol::Box(k) => Symbol::Box(flip(k)),
        })
        .collect();
    ColoredWord::from_letters_unchecked(n, letters)
}
