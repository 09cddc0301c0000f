use std::fmt;

use serde::Serialize;

use crate::model::{ColoredWord, Symbol};
use crate::symbolic::Var;
use crate::{Error, Result};

/// Direction of the initiating bullet's hop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

/// The four move types. `F1`/`B1` swap a bullet with a neighbouring box of a
/// different row; `F2`/`B2` are the nonlocal moves that relabel a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    F1,
    F2,
    B1,
    B2,
}

impl MoveKind {
    pub fn direction(self) -> Direction {
        match self {
            MoveKind::F1 | MoveKind::F2 => Direction::Forward,
            MoveKind::B1 | MoveKind::B2 => Direction::Backward,
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, MoveKind::F2 | MoveKind::B2)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One particle's motion during a transition.
///
/// `shift` is the signed, unwrapped horizontal displacement (positive to the
/// right); the particle crosses `|shift|` column boundaries. `vertical` marks
/// the box that changes row in `F2`/`B2` (for `n = 1` it wraps around the
/// single row and keeps its label).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Displacement {
    pub before: Symbol,
    pub after: Symbol,
    pub from: usize,
    pub shift: i64,
    pub vertical: bool,
}

impl Displacement {
    pub fn to(&self, l: usize) -> usize {
        (self.from as i64 + self.shift).rem_euclid(l as i64) as usize
    }

    /// Calls `f(boundary, sign)` for every column boundary crossed, where
    /// boundary `b` separates columns `b` and `b + 1 (mod L)` and `sign` is
    /// `+1` for a rightward crossing.
    pub fn for_each_crossing(&self, l: usize, mut f: impl FnMut(usize, i64)) {
        let l = l as i64;
        let from = self.from as i64;
        if self.shift > 0 {
            for s in 0..self.shift {
                f((from + s).rem_euclid(l) as usize, 1);
            }
        } else {
            for s in 0..-self.shift {
                f((from - 1 - s).rem_euclid(l) as usize, -1);
            }
        }
    }
}

/// A transition with its rate label and per-particle displacement record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub source: ColoredWord,
    pub target: ColoredWord,
    pub kind: MoveKind,
    /// Label of the initiating bullet (zero-based).
    pub row: usize,
    pub displacements: Vec<Displacement>,
}

impl Transition {
    /// `p_row` for forward moves, `q_row` for backward moves.
    pub fn rate_symbol(&self) -> Var {
        rate_var(self.kind.direction(), self.row)
    }
}

pub fn rate_var(dir: Direction, row: usize) -> Var {
    match dir {
        Direction::Forward => Var::P(row),
        Direction::Backward => Var::Q(row),
    }
}

/// Which move the bullet with label `k` would make in direction `dir`, if any.
pub fn move_kind(letters: &[Symbol], bullets: &[usize], dir: Direction, k: usize) -> Option<MoveKind> {
    let l = letters.len();
    let j = bullets[k];
    let n = bullets.len();
    match dir {
        Direction::Forward => match letters[(j + 1) % l] {
            Symbol::Bullet(_) => None,
            Symbol::Box(i) if i == k => Some(MoveKind::F2),
            Symbol::Box(_) => Some(MoveKind::F1),
        },
        Direction::Backward => match letters[(j + l - 1) % l] {
            Symbol::Bullet(_) => None,
            Symbol::Box(i) if i == k => Some(MoveKind::B2),
            Symbol::Box(_) => Some(MoveKind::B1),
        },
    }
    .filter(|_| n < l)
}

/// Applies the move of bullet `k` in direction `dir` in place, updating the
/// bullet position table and reporting every displacement to `record`.
/// Returns `None` (and changes nothing) when the move is blocked.
pub fn apply_move(
    letters: &mut [Symbol],
    bullets: &mut [usize],
    dir: Direction,
    k: usize,
    mut record: impl FnMut(Displacement),
) -> Option<MoveKind> {
    let kind = move_kind(letters, bullets, dir, k)?;
    let l = letters.len();
    let n = bullets.len();
    let j = bullets[k];
    let next = |x: usize| (x + 1) % l;
    let prev = |x: usize| (x + l - 1) % l;
    match kind {
        MoveKind::F1 | MoveKind::B1 => {
            let (other, bullet_shift) = if kind == MoveKind::F1 { (next(j), 1) } else { (prev(j), -1) };
            let b = letters[other];
            letters.swap(j, other);
            bullets[k] = other;
            record(Displacement {
                before: Symbol::Bullet(k),
                after: Symbol::Bullet(k),
                from: j,
                shift: bullet_shift,
                vertical: false,
            });
            record(Displacement { before: b, after: b, from: other, shift: -bullet_shift, vertical: false });
        }
        MoveKind::F2 => {
            // C = sites strictly between Bullet(k-1) and Bullet(k). For n = 1
            // the moved box lands right of the bullet's new site and C is
            // everything else.
            let kp = (k + n - 1) % n;
            let box_from = next(j);
            let (c_start, clen, land) = if n == 1 {
                (next(box_from), l - 2, next(next(j)))
            } else {
                let a = bullets[kp];
                (next(a), (j + l - a - 1) % l, next(a))
            };
            let travel = if n == 1 { l - 1 } else { clen + 1 };
            // shift C right by one, walking from its right end
            for t in (0..clen).rev() {
                let from = (c_start + t) % l;
                let s = letters[from];
                letters[next(from)] = s;
                record(Displacement { before: s, after: s, from, shift: 1, vertical: false });
            }
            record(Displacement {
                before: Symbol::Bullet(k),
                after: Symbol::Bullet(k),
                from: j,
                shift: 1,
                vertical: false,
            });
            record(Displacement {
                before: Symbol::Box(k),
                after: Symbol::Box(kp),
                from: box_from,
                shift: -(travel as i64),
                vertical: true,
            });
            letters[box_from] = Symbol::Bullet(k);
            bullets[k] = box_from;
            letters[land] = Symbol::Box(kp);
        }
        MoveKind::B2 => {
            let kn = (k + 1) % n;
            let box_from = prev(j);
            let (c_start, clen, land) = if n == 1 {
                (prev(box_from), l - 2, prev(prev(j)))
            } else {
                let b = bullets[kn];
                (prev(b), (b + l - j - 1) % l, prev(b))
            };
            let travel = if n == 1 { l - 1 } else { clen + 1 };
            // shift C' left by one, walking from its left end
            for t in (0..clen).rev() {
                let from = (c_start + l - t) % l;
                let s = letters[from];
                letters[prev(from)] = s;
                record(Displacement { before: s, after: s, from, shift: -1, vertical: false });
            }
            record(Displacement {
                before: Symbol::Bullet(k),
                after: Symbol::Bullet(k),
                from: j,
                shift: -1,
                vertical: false,
            });
            record(Displacement {
                before: Symbol::Box(k),
                after: Symbol::Box(kn),
                from: box_from,
                shift: travel as i64,
                vertical: true,
            });
            letters[box_from] = Symbol::Bullet(k);
            bullets[k] = box_from;
            letters[land] = Symbol::Box(kn);
        }
    }
    Some(kind)
}

/// Every transition out of `w`: for each label, at most one forward and one
/// backward move. Ordered by label, forward before backward.
pub fn outgoing_transitions(w: &ColoredWord) -> Result<Vec<Transition>> {
    let v = w.violations();
    if !v.is_empty() {
        return Err(Error::Validation(v));
    }
    Ok(outgoing_unchecked(w))
}

pub(crate) fn outgoing_unchecked(w: &ColoredWord) -> Vec<Transition> {
    let bullets = w.bullet_positions();
    let mut out = Vec::with_capacity(2 * w.n());
    for k in 0..w.n() {
        for dir in [Direction::Forward, Direction::Backward] {
            let mut letters = w.letters().to_vec();
            let mut b = bullets.clone();
            let mut disp = Vec::new();
            if let Some(kind) = apply_move(&mut letters, &mut b, dir, k, |d| disp.push(d)) {
                out.push(Transition {
                    source: w.clone(),
                    target: ColoredWord::from_letters_unchecked(w.n(), letters),
                    kind,
                    row: k,
                    displacements: disp,
                });
            }
        }
    }
    out
}

/// Rebuilds the target of a transition from its source and displacement
/// record alone.
pub fn replay(source: &ColoredWord, displacements: &[Displacement]) -> Result<ColoredWord> {
    let l = source.len();
    let mut letters: Vec<Option<Symbol>> = source.letters().iter().copied().map(Some).collect();
    for d in displacements {
        if source.letters()[d.from] != d.before {
            return Err(Error::IdentityFailure(format!("displacement from site {} does not match the source", d.from)));
        }
        letters[d.from] = None;
    }
    for d in displacements {
        let to = d.to(l);
        if letters[to].is_some() {
            return Err(Error::IdentityFailure(format!("two particles land on site {to}")));
        }
        letters[to] = Some(d.after);
    }
    let letters: Option<Vec<Symbol>> = letters.into_iter().collect();
    let letters = letters.ok_or_else(|| Error::IdentityFailure("replay leaves an empty site".into()))?;
    ColoredWord::new(source.n(), letters)
}
