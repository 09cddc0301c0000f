use super::moves::{outgoing_unchecked, Direction, MoveKind, Transition};
use crate::model::{ColoredWord, Symbol};

/// Sum over boxes of `(gap label - box label) mod n`. Zero iff every box sits
/// in the gap of its own label (a basic configuration).
pub fn excess(w: &ColoredWord) -> usize {
    let n = w.n();
    let gaps = w.gap_labels();
    w.letters()
        .iter()
        .zip(&gaps)
        .filter_map(|(s, &g)| match *s {
            Symbol::Box(i) => Some((g + n - i) % n),
            Symbol::Bullet(_) => None,
        })
        .sum()
}

pub fn is_basic(w: &ColoredWord) -> bool {
    excess(w) == 0
}

/// One round of the monotone strategy: find a gap `k` that reads
/// `Bullet(k) Box(k)^t Box(i)` with `i != k`, apply `t` forward moves of
/// `Bullet(k)` (each an `F2`) and then one more (an `F1`). Excess drops by
/// exactly one. Returns `None` for basic configurations.
pub fn excess_step(w: &ColoredWord) -> Option<Vec<Transition>> {
    let l = w.len();
    let bullets = w.bullet_positions();
    let (k, t) = (0..w.n()).find_map(|k| {
        let mut t = 0;
        loop {
            match w.letters()[(bullets[k] + t + 1) % l] {
                Symbol::Box(i) if i == k => t += 1,
                Symbol::Box(_) => return Some((k, t)),
                Symbol::Bullet(_) => return None,
            }
        }
    })?;
    let mut path = Vec::with_capacity(t + 1);
    let mut cur = w.clone();
    for step in 0..=t {
        let tr = outgoing_unchecked(&cur)
            .into_iter()
            .find(|tr| tr.row == k && tr.kind.direction() == Direction::Forward)
            .expect("strategy move must be available");
        debug_assert_eq!(tr.kind, if step < t { MoveKind::F2 } else { MoveKind::F1 });
        cur = tr.target.clone();
        path.push(tr);
    }
    Some(path)
}

/// Repeats [`excess_step`] until a basic configuration is reached.
pub fn reduce_to_basic(w: &ColoredWord) -> Vec<Transition> {
    let mut out = Vec::new();
    let mut cur = w.clone();
    while let Some(steps) = excess_step(&cur) {
        cur = steps.last().unwrap().target.clone();
        out.extend(steps);
    }
    out
}
