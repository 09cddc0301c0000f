use serde::Serialize;

use super::moves::{outgoing_unchecked, Direction, MoveKind, Transition};
use super::reach::{strongly_connected, transition_graph};
use crate::model::{enumerate_full, ColoredWord, Symbol};
use crate::par::*;
use crate::stationary::config_weight;
use crate::symbolic::Var;
use crate::{Error, Result};

/// States of positive weight when `q_i = 0` for every `i` in a label set,
/// with a certificate that the allowed dynamics cannot leave them.
#[derive(Clone, Debug, Serialize)]
pub struct TaRestriction {
    pub l: usize,
    pub n: usize,
    /// Zero-based labels with `q_i = 0`, sorted.
    pub zero_q: Vec<usize>,
    /// Sorted members of the full (unrestricted-rotation) set.
    pub states: Vec<ColoredWord>,
    pub closure: ClosureCertificate,
}

/// `(source, target, kind, row)` of an allowed move that leaves the set.
pub type Escape = (String, String, MoveKind, usize);

#[derive(Clone, Debug, Serialize)]
pub struct ClosureCertificate {
    pub transitions_checked: usize,
    /// Allowed transitions from a member to a non-member: `(source, target, kind, row)`.
    pub escapes: Vec<Escape>,
    /// Whether the allowed transition graph on the set is strongly connected.
    pub strongly_connected: bool,
}

impl ClosureCertificate {
    pub fn closed(&self) -> bool {
        self.escapes.is_empty()
    }
}

impl TaRestriction {
    /// Members whose first letter is `Bullet(0)`.
    pub fn restricted(&self) -> Vec<&ColoredWord> {
        self.states.iter().filter(|w| w.is_restricted()).collect()
    }
}

/// Membership by weight: the weight monomial has no `q_i` for `i` in `zero_q`.
pub fn in_omega_i(w: &ColoredWord, zero_q: &[usize]) -> bool {
    let m = config_weight(w);
    zero_q.iter().all(|&i| m.exponent(Var::Q(i)) == 0)
}

/// Membership by position: rotate so that `Bullet(i)` comes first; then every
/// `Box(j)` must appear after `Bullet(j)`.
pub fn right_of_condition(w: &ColoredWord, i: usize) -> bool {
    let l = w.len();
    let start = w.bullet_positions()[i];
    let mut seen = vec![false; w.n()];
    for t in 0..l {
        match w.letters()[(start + t) % l] {
            Symbol::Bullet(k) => seen[k] = true,
            Symbol::Box(j) if !seen[j] => return false,
            Symbol::Box(_) => {}
        }
    }
    true
}

/// Whether a transition has nonzero rate when `q_i = 0` for `i` in `zero_q`.
pub fn allowed_under(t: &Transition, zero_q: &[usize]) -> bool {
    t.kind.direction() == Direction::Forward || !zero_q.contains(&t.row)
}

/// Builds the restricted set for the label set `zero_q` (zero-based).
pub fn restrict_ta(l: usize, n: usize, zero_q: &[usize], cap: u64) -> Result<TaRestriction> {
    let mut set: Vec<usize> = zero_q.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&i| i >= n) {
        return Err(Error::domain(format!("label {} is not in 1..{n}", bad + 1)));
    }
    let all = enumerate_full(l, n, cap)?;
    let states: Vec<ColoredWord> = all.into_iter().filter(|w| in_omega_i(w, &set)).collect();
    let checks: Vec<(usize, Vec<Escape>)> = par_iter!(states)
        .map(|w| {
            let mut checked = 0;
            let mut esc = Vec::new();
            for t in outgoing_unchecked(w).into_iter().filter(|t| allowed_under(t, &set)) {
                checked += 1;
                if states.binary_search(&t.target).is_err() {
                    esc.push((t.source.to_string(), t.target.to_string(), t.kind, t.row));
                }
            }
            (checked, esc)
        })
        .collect();
    let transitions_checked = checks.iter().map(|c| c.0).sum();
    let escapes: Vec<_> = checks.into_iter().flat_map(|c| c.1).collect();
    let connected = if escapes.is_empty() {
        strongly_connected(&transition_graph(&states, |t| allowed_under(t, &set))?)
    } else {
        false
    };
    Ok(TaRestriction {
        l,
        n,
        zero_q: set,
        states,
        closure: ClosureCertificate { transitions_checked, escapes, strongly_connected: connected },
    })
}

/// Stirling numbers of the second kind, `S(m, k)`.
pub fn stirling2(m: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=m {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{binomial, enumerate_full};

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(5, 2), 15);
        assert_eq!(stirling2(5, 3), 25);
        assert_eq!(stirling2(6, 3), 90);
        assert_eq!(stirling2(3, 3), 1);
        assert_eq!(stirling2(0, 0), 1);
    }

    #[test]
    fn weight_and_position_agree() {
        for (l, n) in [(4, 2), (5, 3), (6, 3), (5, 4)] {
            for w in enumerate_full(l, n, u64::MAX).unwrap() {
                for i in 0..n {
                    assert_eq!(in_omega_i(&w, &[i]), right_of_condition(&w, i), "{w} i={i}");
                }
            }
        }
    }

    #[test]
    fn single_label_counts() {
        for (l, n, want) in [(5, 2, 15), (5, 3, 25), (6, 3, 90)] {
            let r = restrict_ta(l, n, &[0], u64::MAX).unwrap();
            assert_eq!(r.restricted().len(), want);
            assert!(r.closure.closed());
            assert!(r.closure.strongly_connected);
        }
    }

    #[test]
    fn all_labels_and_empty() {
        for (l, n) in [(5, 2), (5, 3), (6, 4)] {
            let all: Vec<usize> = (0..n).collect();
            let r = restrict_ta(l, n, &all, u64::MAX).unwrap();
            assert_eq!(r.restricted().len() as u64, binomial(l as u64 - 1, n as u64 - 1).unwrap());
            assert!(r.closure.closed());
            let none = restrict_ta(l, n, &[], u64::MAX).unwrap();
            assert_eq!(none.states, enumerate_full(l, n, u64::MAX).unwrap());
        }
        assert!(restrict_ta(4, 2, &[2], u64::MAX).is_err());
    }
}
