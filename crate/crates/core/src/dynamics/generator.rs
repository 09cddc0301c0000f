use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::moves::outgoing_unchecked;
use crate::model::{enumerate_full, state_index, ColoredWord};
use crate::par::*;
use crate::symbolic::{Polynomial, RatePoint, Scalar, Var};
use crate::{Error, Result};

/// Generator of the chain on an enumerated state set, stored as merged
/// off-diagonal triplets plus the diagonal. Column `s` holds the rates out of
/// state `s`, so every column sums to zero.
#[derive(Clone, Debug)]
pub struct SparseGenerator<T> {
    states: Vec<ColoredWord>,
    /// `(source, target, rate)`, sorted by source then target.
    entries: Vec<(usize, usize, T)>,
    diagonal: Vec<T>,
}

/// Symbolic (polynomial entries) or numeric (exact rational entries).
#[derive(Clone, Debug)]
pub enum GeneratorMode {
    Symbolic,
    Numeric(RatePoint),
}

#[derive(Clone, Debug)]
pub enum Generator {
    Symbolic(SparseGenerator<Polynomial>),
    Numeric(SparseGenerator<BigRational>),
}

impl<T: Scalar> SparseGenerator<T> {
    pub fn states(&self) -> &[ColoredWord] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn index_of(&self, w: &ColoredWord) -> Option<usize> {
        state_index(&self.states, w)
    }

    /// Column sums recomputed from the stored entries.
    pub fn column_sums(&self) -> Vec<T> {
        let mut sums = self.diagonal.clone();
        for (s, _, r) in &self.entries {
            sums[*s].add_ref(r);
        }
        sums
    }

    pub fn column_sums_vanish(&self) -> bool {
        self.column_sums().iter().all(Scalar::is_zero_value)
    }

    /// Outgoing neighbour lists by source index.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.states.len()];
        for (s, t, _) in &self.entries {
            adj[*s].push(*t);
        }
        adj
    }
}

/// Builds the generator over the whole state space `Omega_{L,n}`.
pub fn build_generator(l: usize, n: usize, mode: &GeneratorMode, cap: u64) -> Result<Generator> {
    let states = enumerate_full(l, n, cap)?;
    match mode {
        GeneratorMode::Symbolic => build_symbolic_on(states).map(Generator::Symbolic),
        GeneratorMode::Numeric(rates) => build_numeric_on(states, rates).map(Generator::Numeric),
    }
}

pub fn build_symbolic(l: usize, n: usize, cap: u64) -> Result<SparseGenerator<Polynomial>> {
    build_symbolic_on(enumerate_full(l, n, cap)?)
}

pub fn build_numeric(l: usize, n: usize, rates: &RatePoint, cap: u64) -> Result<SparseGenerator<BigRational>> {
    build_numeric_on(enumerate_full(l, n, cap)?, rates)
}

pub fn build_symbolic_on(states: Vec<ColoredWord>) -> Result<SparseGenerator<Polynomial>> {
    let n = states.first().map(ColoredWord::n).unwrap_or(1);
    build_on(states, Polynomial::zero(n), move |v| Polynomial::var(n, v))
}

/// Numeric generator on a sorted state set. Transitions with rate zero are
/// dropped; a positive-rate transition leaving the set is an error.
pub fn build_numeric_on(states: Vec<ColoredWord>, rates: &RatePoint) -> Result<SparseGenerator<BigRational>> {
    if let Some(w) = states.first() {
        if w.n() != rates.n() {
            return Err(Error::domain(format!("rates are for n = {}, states have n = {}", rates.n(), w.n())));
        }
    }
    build_on(states, BigRational::zero(), |v| match v {
        Var::P(k) => rates.p()[k].clone(),
        Var::Q(k) => rates.q()[k].clone(),
    })
}

fn build_on<T, F>(states: Vec<ColoredWord>, zero: T, rate: F) -> Result<SparseGenerator<T>>
where
    T: Scalar,
    F: Fn(Var) -> T + Sync,
{
    debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
    let columns: Vec<Result<Vec<(usize, T)>>> = into_par_iter!(0..states.len())
        .map(|s| {
            let mut merged: BTreeMap<usize, T> = BTreeMap::new();
            for t in outgoing_unchecked(&states[s]) {
                let r = rate(t.rate_symbol());
                if r.is_zero_value() {
                    continue;
                }
                let target = state_index(&states, &t.target).ok_or_else(|| {
                    Error::IdentityFailure(format!(
                        "transition {} -> {} ({}) leaves the state set",
                        t.source,
                        t.target,
                        t.rate_symbol()
                    ))
                })?;
                merged.entry(target).or_insert_with(|| zero.zero_like()).add_ref(&r);
            }
            Ok(merged.into_iter().collect())
        })
        .collect();
    let mut entries = Vec::new();
    let mut diagonal = Vec::with_capacity(states.len());
    for (s, col) in columns.into_iter().enumerate() {
        let mut out = zero.zero_like();
        for (t, r) in col? {
            out.add_ref(&r);
            entries.push((s, t, r));
        }
        diagonal.push(out.neg_ref());
    }
    Ok(SparseGenerator { states, entries, diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_one_merges_both_moves() {
        let g = build_symbolic(2, 1, u64::MAX).unwrap();
        assert_eq!(g.len(), 2);
        let p = Polynomial::parse(1, "p1 + q1").unwrap();
        assert_eq!(g.entries().len(), 2);
        for (_, _, r) in g.entries() {
            assert_eq!(r, &p);
        }
        assert!(g.column_sums_vanish());
    }

    #[test]
    fn four_two_numeric() {
        let rates = RatePoint::parse("1,2;3,5").unwrap();
        let g = build_numeric(4, 2, &rates, u64::MAX).unwrap();
        assert_eq!(g.len(), 48);
        assert!(g.column_sums_vanish());
        assert!(g.entries().iter().all(|(_, _, r)| r > &BigRational::zero()));
    }

    #[test]
    fn four_two_total_outgoing_rate() {
        let g = build_symbolic(4, 2, u64::MAX).unwrap();
        let want = Polynomial::parse(2, "p1 + q2 + p2 + q1").unwrap();
        for (s, w) in g.states().iter().enumerate() {
            let bullets = w.bullet_positions();
            let gap0 = (bullets[1] + 4 - bullets[0] - 1) % 4;
            let gap1 = (bullets[0] + 4 - bullets[1] - 1) % 4;
            if gap0 > 0 && gap1 > 0 {
                assert_eq!(-(g.diagonal()[s].clone()), want, "{w}");
            }
        }
    }
}
