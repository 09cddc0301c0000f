use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::table::{StationaryTable, TableValues};
use super::weights::{config_weight, w_box};
use crate::dynamics::{outgoing_unchecked, rate_var, Direction};
use crate::model::{enumerate_full, ColoredWord, Symbol};
use crate::symbolic::{Polynomial, RatePoint};
use crate::{Error, Result};

/// A configuration of the one-dimensional process: bullets `0..n` in cyclic
/// order and unlabeled vacancies.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OneDimConfig {
    /// `Some(k)` for `Bullet(k)`, `None` for a vacancy.
    pub sites: Vec<Option<usize>>,
}

impl OneDimConfig {
    /// Erases box labels.
    pub fn from_word(w: &ColoredWord) -> Self {
        let sites = w
            .letters()
            .iter()
            .map(|s| match *s {
                Symbol::Bullet(k) => Some(k),
                Symbol::Box(_) => None,
            })
            .collect();
        OneDimConfig { sites }
    }

    pub fn n(&self) -> usize {
        self.sites.iter().flatten().count()
    }

    /// `c_k`: vacancies between `Bullet(k)` and the next bullet.
    pub fn gap_vector(&self) -> Vec<usize> {
        let l = self.sites.len();
        let n = self.n();
        let mut gaps = vec![0; n];
        let Some(start) = self.sites.iter().position(Option::is_some) else {
            return gaps;
        };
        let mut current = self.sites[start].unwrap();
        for t in 1..l {
            match self.sites[(start + t) % l] {
                Some(k) => current = k,
                None => gaps[current] += 1,
            }
        }
        gaps
    }

    /// One-dimensional moves: bullet `k` hops to an empty neighbour.
    pub fn transitions(&self) -> Vec<(Direction, usize, OneDimConfig)> {
        let l = self.sites.len();
        let mut out = Vec::new();
        for j in 0..l {
            let Some(k) = self.sites[j] else { continue };
            for (dir, to) in [(Direction::Forward, (j + 1) % l), (Direction::Backward, (j + l - 1) % l)] {
                if l > 1 && self.sites[to].is_none() {
                    let mut s = self.sites.clone();
                    s.swap(j, to);
                    out.push((dir, k, OneDimConfig { sites: s }));
                }
            }
        }
        out
    }
}

impl fmt::Display for OneDimConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sites
            .iter()
            .map(|s| match s {
                Some(k) => format!("B{}", k + 1),
                None => "_".to_string(),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// `prod_k W(k)^{c_k}`.
pub fn evans_weight(gaps: &[usize]) -> Polynomial {
    let n = gaps.len();
    let mut out = Polynomial::one(n);
    for (k, &c) in gaps.iter().enumerate() {
        if c > 0 {
            out = &out * &w_box(k, n).expect("label in range").pow(c as u32);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LumpingReport {
    pub l: usize,
    pub n: usize,
    pub fibers: usize,
    pub transitions_checked: usize,
    /// `(fiber state, target 1D config)` pairs whose aggregated rate differs
    /// from the one-dimensional rate.
    pub rate_violations: Vec<(String, String)>,
    /// 1D configurations whose summed fiber weight differs from the product form.
    pub product_form_violations: Vec<String>,
}

impl LumpingReport {
    pub fn holds(&self) -> bool {
        self.rate_violations.is_empty() && self.product_form_violations.is_empty()
    }
}

/// Symbolic lumping check: for every state `w` and every 1D transition out of
/// its image, the total rate from `w` into the target fiber equals the 1D
/// rate, and no other fiber is entered; each fiber's total weight equals the
/// product form.
pub fn lump_and_evans(l: usize, n: usize, cap: u64) -> Result<LumpingReport> {
    let states = enumerate_full(l, n, cap)?;
    let mut fibers: BTreeMap<OneDimConfig, Polynomial> = BTreeMap::new();
    let mut rate_violations = Vec::new();
    let mut checked = 0;
    for w in &states {
        let psi = OneDimConfig::from_word(w);
        fibers.entry(psi.clone()).or_insert_with(|| Polynomial::zero(n)).add_monomial(config_weight(w));
        let mut aggregated: BTreeMap<OneDimConfig, Polynomial> = BTreeMap::new();
        for t in outgoing_unchecked(w) {
            aggregated
                .entry(OneDimConfig::from_word(&t.target))
                .or_insert_with(|| Polynomial::zero(n))
                .add_monomial(crate::symbolic::Monomial::var(n, t.rate_symbol()));
        }
        let mut expected: BTreeMap<OneDimConfig, Polynomial> = BTreeMap::new();
        for (dir, k, target) in psi.transitions() {
            expected
                .entry(target)
                .or_insert_with(|| Polynomial::zero(n))
                .add_monomial(crate::symbolic::Monomial::var(n, rate_var(dir, k)));
        }
        checked += expected.len();
        if aggregated != expected {
            let keys: std::collections::BTreeSet<_> = aggregated.keys().chain(expected.keys()).cloned().collect();
            for key in keys {
                if aggregated.get(&key) != expected.get(&key) {
                    rate_violations.push((w.to_string(), key.to_string()));
                }
            }
        }
    }
    let product_form_violations = fibers
        .iter()
        .filter(|(psi, total)| evans_weight(&psi.gap_vector()) != **total)
        .map(|(psi, _)| psi.to_string())
        .collect();
    Ok(LumpingReport {
        l,
        n,
        fibers: fibers.len(),
        transitions_checked: checked,
        rate_violations,
        product_form_violations,
    })
}

/// Sums a numeric stationary table over fibers and compares with
/// `prod W(k)^{c_k} / (L Z)` evaluated at the table's rates.
pub fn lumped_marginals_match(table: &StationaryTable) -> Result<bool> {
    let TableValues::Numeric { rates, probabilities } = &table.values else {
        return Err(Error::domain("lumped marginals need a numeric table"));
    };
    let mut fibers: BTreeMap<OneDimConfig, BigRational> = BTreeMap::new();
    for (w, p) in table.states.iter().zip(probabilities) {
        *fibers.entry(OneDimConfig::from_word(w)).or_insert_with(BigRational::zero) += p;
    }
    let weights: Vec<(BigRational, &BigRational)> =
        fibers.iter().map(|(psi, p)| (evans_weight(&psi.gap_vector()).evaluate(rates), p)).collect();
    let total: BigRational = weights.iter().fold(BigRational::zero(), |a, (w, _)| a + w);
    Ok(weights.iter().all(|(w, p)| &(w / &total) == *p))
}

/// Convenience: lumped probabilities at a rate point straight from the
/// product form.
pub fn evans_distribution(l: usize, n: usize, rates: &RatePoint, cap: u64) -> Result<Vec<(OneDimConfig, BigRational)>> {
    let states = enumerate_full(l, n, cap)?;
    let mut seen: BTreeMap<OneDimConfig, BigRational> = BTreeMap::new();
    for w in &states {
        let psi = OneDimConfig::from_word(w);
        if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(psi) {
            let v = evans_weight(&slot.key().gap_vector()).evaluate(rates);
            slot.insert(v);
        }
    }
    let total: BigRational = seen.values().fold(BigRational::zero(), |a, b| a + b);
    Ok(seen.into_iter().map(|(k, v)| (k, v / &total)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_numeric;
    use crate::stationary::exact_stationary;

    #[test]
    fn running_example_gaps() {
        let w: ColoredWord = "B1 b3 b3 b4 B2 b2 B3 b3 b1 B4".parse().unwrap();
        let psi = OneDimConfig::from_word(&w);
        assert_eq!(psi.to_string(), "B1 _ _ _ B2 _ B3 _ _ B4");
        assert_eq!(psi.gap_vector(), vec![3, 1, 2, 0]);
        let want = &(&w_box(0, 4).unwrap().pow(3) * &w_box(1, 4).unwrap()) * &w_box(2, 4).unwrap().pow(2);
        assert_eq!(evans_weight(&psi.gap_vector()), want);
    }

    #[test]
    fn lumping_small() {
        for l in 1..=5 {
            for n in 1..=l {
                let r = lump_and_evans(l, n, u64::MAX).unwrap();
                assert!(r.holds(), "L={l} n={n}: {r:?}");
            }
        }
    }

    #[test]
    fn marginals_four_two() {
        let rates = RatePoint::parse("1,2;3,5").unwrap();
        let g = build_numeric(4, 2, &rates, u64::MAX).unwrap();
        let t = exact_stationary(&g, &rates).unwrap();
        assert!(lumped_marginals_match(&t).unwrap());
        let d = evans_distribution(3, 3, &rates_three(), u64::MAX).unwrap();
        assert_eq!(d.len(), 3);
    }

    fn rates_three() -> RatePoint {
        RatePoint::parse("1,1,1;1,1,1").unwrap()
    }
}
