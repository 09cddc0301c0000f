use std::collections::VecDeque;

use serde::Serialize;

use super::moves::{outgoing_unchecked, Transition};
use crate::model::{enumerate_full, state_index, ColoredWord};
use crate::par::*;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReachDirection {
    /// Every state can reach the special configuration.
    To,
    /// The special configuration reaches every state.
    From,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReachReport {
    pub direction: ReachDirection,
    pub total: usize,
    pub reached: usize,
    /// Path between the special configuration and a state at maximal BFS
    /// distance, oriented along the chain's transitions.
    pub witness: Vec<ColoredWord>,
}

impl ReachReport {
    pub fn all_reached(&self) -> bool {
        self.reached == self.total
    }
}

/// Directed transition graph on a sorted state set, keeping the transitions
/// for which `allowed` holds. Transitions leaving the set are an error.
pub fn transition_graph(
    states: &[ColoredWord],
    allowed: impl Fn(&Transition) -> bool + Sync,
) -> Result<Vec<Vec<usize>>> {
    into_par_iter!(0..states.len())
        .map(|s| {
            let mut out: Vec<usize> = Vec::new();
            for t in outgoing_unchecked(&states[s]).iter().filter(|t| allowed(t)) {
                let idx = state_index(states, &t.target).ok_or_else(|| {
                    Error::IdentityFailure(format!("{} -> {} leaves the state set", t.source, t.target))
                })?;
                out.push(idx);
            }
            out.sort_unstable();
            out.dedup();
            Ok(out)
        })
        .collect()
}

pub fn reverse_graph(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rev = vec![Vec::new(); adj.len()];
    for (s, outs) in adj.iter().enumerate() {
        for &t in outs {
            rev[t].push(s);
        }
    }
    rev
}

/// BFS from `start`: parent of each reached vertex (`usize::MAX` for the root
/// and for unreached vertices) plus the visit order.
pub fn bfs(adj: &[Vec<usize>], start: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    (parent, order)
}

pub fn strongly_connected(adj: &[Vec<usize>]) -> bool {
    if adj.is_empty() {
        return true;
    }
    bfs(adj, 0).1.len() == adj.len() && bfs(&reverse_graph(adj), 0).1.len() == adj.len()
}

/// Reachability to or from `start` over an explicit graph.
pub fn reach_on(states: &[ColoredWord], adj: &[Vec<usize>], start: usize, direction: ReachDirection) -> ReachReport {
    let search = match direction {
        ReachDirection::From => adj.to_vec(),
        ReachDirection::To => reverse_graph(adj),
    };
    let (parent, order) = bfs(&search, start);
    let far = *order.last().unwrap_or(&start);
    let mut chain = vec![far];
    let mut v = far;
    while parent[v] != usize::MAX {
        v = parent[v];
        chain.push(v);
    }
    // chain runs far -> start in the search graph
    if direction == ReachDirection::From {
        chain.reverse();
    }
    ReachReport {
        direction,
        total: states.len(),
        reached: order.len(),
        witness: chain.into_iter().map(|i| states[i].clone()).collect(),
    }
}

/// Reachability to or from `B1 .. Bn bn .. bn` with all rates positive.
pub fn reachability_tau0(l: usize, n: usize, direction: ReachDirection, cap: u64) -> Result<ReachReport> {
    let states = enumerate_full(l, n, cap)?;
    let adj = transition_graph(&states, |_| true)?;
    let start = state_index(&states, &ColoredWord::tau0(l, n)?).expect("tau0 is a state");
    Ok(reach_on(&states, &adj, start, direction))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_connected() {
        for (l, n) in [(2, 1), (4, 2), (5, 3), (5, 2), (6, 3)] {
            for dir in [ReachDirection::To, ReachDirection::From] {
                let r = reachability_tau0(l, n, dir, u64::MAX).unwrap();
                assert!(r.all_reached(), "L={l} n={n} {dir:?}");
                assert!(!r.witness.is_empty());
            }
        }
        assert_eq!(reachability_tau0(4, 2, ReachDirection::To, u64::MAX).unwrap().total, 48);
    }

    #[test]
    fn witness_follows_transitions() {
        let r = reachability_tau0(5, 2, ReachDirection::From, u64::MAX).unwrap();
        assert_eq!(r.witness[0], ColoredWord::tau0(5, 2).unwrap());
        for pair in r.witness.windows(2) {
            let ts = outgoing_unchecked(&pair[0]);
            assert!(ts.iter().any(|t| t.target == pair[1]));
        }
        let r = reachability_tau0(5, 2, ReachDirection::To, u64::MAX).unwrap();
        assert_eq!(r.witness.last().unwrap(), &ColoredWord::tau0(5, 2).unwrap());
        for pair in r.witness.windows(2) {
            assert!(outgoing_unchecked(&pair[0]).iter().any(|t| t.target == pair[1]));
        }
    }
}
