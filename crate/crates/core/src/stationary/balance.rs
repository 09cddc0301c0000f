use num_rational::BigRational;
use serde::Serialize;

use super::weights::config_weight;
use crate::dynamics::{build_numeric_on, build_symbolic_on, SparseGenerator};
use crate::model::{enumerate_full, ColoredWord};
use crate::par::*;
use crate::symbolic::{Polynomial, RatePoint, Scalar};
use crate::Result;

/// Outcome of checking weighted inflow against weighted outflow at every state.
#[derive(Clone, Debug, Serialize)]
pub struct BalanceReport {
    pub mode: String,
    pub states_checked: usize,
    /// `(state, inflow - outflow)` wherever the residual is nonzero.
    pub failures: Vec<(String, String)>,
}

impl BalanceReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Symbolic balance on the whole state space.
pub fn verify_balance_symbolic(l: usize, n: usize, cap: u64) -> Result<BalanceReport> {
    let gen = build_symbolic_on(enumerate_full(l, n, cap)?)?;
    let weights: Vec<Polynomial> =
        par_iter!(gen.states()).map(|w| Polynomial::from_monomial(config_weight(w))).collect();
    Ok(check(&gen, &weights, "symbolic"))
}

/// Numeric balance at a rate point, on the whole state space.
pub fn verify_balance_numeric(l: usize, n: usize, rates: &RatePoint, cap: u64) -> Result<BalanceReport> {
    verify_balance_on(enumerate_full(l, n, cap)?, rates)
}

/// Numeric balance on a given (closed) state set, e.g. a totally asymmetric
/// restriction.
pub fn verify_balance_on(states: Vec<ColoredWord>, rates: &RatePoint) -> Result<BalanceReport> {
    let gen = build_numeric_on(states, rates)?;
    let weights: Vec<BigRational> = par_iter!(gen.states()).map(|w| config_weight(w).evaluate(rates)).collect();
    Ok(check(&gen, &weights, "numeric"))
}

fn check<T: Scalar + std::fmt::Display>(gen: &SparseGenerator<T>, weights: &[T], mode: &str) -> BalanceReport {
    // residual[t] = sum_s G[t][s] * weight[s]: inflow minus outflow at t
    let mut residual: Vec<T> = gen.diagonal().iter().zip(weights).map(|(d, w)| d.mul_ref(w)).collect();
    for (s, t, r) in gen.entries() {
        let term = r.mul_ref(&weights[*s]);
        residual[*t].add_ref(&term);
    }
    let failures = residual
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero_value())
        .map(|(i, r)| (gen.states()[i].to_string(), r.to_string()))
        .collect();
    BalanceReport { mode: mode.to_string(), states_checked: gen.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::outgoing_transitions;

    #[test]
    fn symbolic_small() {
        for l in 1..=5 {
            for n in 1..=l {
                let r = verify_balance_symbolic(l, n, u64::MAX).unwrap();
                assert!(r.holds(), "L={l} n={n}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn numeric_point() {
        let rates = RatePoint::parse("1,2;3,5").unwrap();
        assert!(verify_balance_numeric(4, 2, &rates, u64::MAX).unwrap().holds());
    }

    #[test]
    fn config_a_by_hand() {
        // B1 B2 b1 b1 leaves at rates q1 and p2; it is entered from
        // B1 b1 B2 b1 and B1 b2 B2 b1, both at rate q2.
        let a: ColoredWord = "B1 B2 b1 b1".parse().unwrap();
        let out: Vec<String> = outgoing_transitions(&a).unwrap().iter().map(|t| t.rate_symbol().to_string()).collect();
        assert_eq!(out, vec!["q1", "p2"]);
        let mut inflow = Polynomial::zero(2);
        for w in enumerate_full(4, 2, u64::MAX).unwrap() {
            for t in outgoing_transitions(&w).unwrap() {
                if t.target == a {
                    let m = config_weight(&w).mul_var(t.rate_symbol());
                    inflow.add_monomial(m);
                }
            }
        }
        let outflow = &Polynomial::from_monomial(config_weight(&a)) * &Polynomial::parse(2, "q1 + p2").unwrap();
        assert_eq!(inflow, outflow);
        assert_eq!(inflow, Polynomial::parse(2, "p2 q2^2 + q1 q2^2").unwrap());
    }
}
