use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::solver::null_vector;
use super::weights::config_weight;
use crate::dynamics::SparseGenerator;
use crate::model::{enumerate_full, state_index, ColoredWord};
use crate::par::*;
use crate::symbolic::{Monomial, Polynomial, RatePoint};
use crate::{Error, Result};

/// Stationary distribution over an enumerated state set.
#[derive(Clone, Debug)]
pub struct StationaryTable {
    pub states: Vec<ColoredWord>,
    pub values: TableValues,
}

#[derive(Clone, Debug)]
pub enum TableValues {
    /// Exact probabilities summing to one.
    Numeric { rates: RatePoint, probabilities: Vec<BigRational> },
    /// Unnormalized monomial weights and their sum.
    Symbolic { weights: Vec<Monomial>, normalization: Polynomial },
}

#[derive(Serialize)]
struct Row {
    state: String,
    weight: String,
    probability: String,
}

impl StationaryTable {
    pub fn probabilities(&self) -> Option<&[BigRational]> {
        match &self.values {
            TableValues::Numeric { probabilities, .. } => Some(probabilities),
            TableValues::Symbolic { .. } => None,
        }
    }

    pub fn probability_of(&self, w: &ColoredWord) -> Option<&BigRational> {
        let i = state_index(&self.states, w)?;
        self.probabilities().map(|p| &p[i])
    }

    /// Whether the probabilities are exactly proportional to the weights
    /// evaluated at the table's rates.
    pub fn proportional_to_weights(&self) -> bool {
        let TableValues::Numeric { rates, probabilities } = &self.values else {
            return true;
        };
        let weights: Vec<BigRational> = par_iter!(self.states).map(|w| config_weight(w).evaluate(rates)).collect();
        proportional(probabilities, &weights)
    }

    /// JSON document: `{"mode", "rates"?, "normalization"?, "rows": [{state, weight, probability}]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let (mode, extra, rows): (&str, serde_json::Value, Vec<Row>) = match &self.values {
            TableValues::Numeric { rates, probabilities } => (
                "numeric",
                serde_json::json!({ "rates": rates.to_json() }),
                self.states
                    .iter()
                    .zip(probabilities)
                    .map(|(w, p)| Row {
                        state: w.to_string(),
                        weight: config_weight(w).to_string(),
                        probability: p.to_string(),
                    })
                    .collect(),
            ),
            TableValues::Symbolic { weights, normalization } => (
                "symbolic",
                serde_json::json!({ "normalization": normalization }),
                self.states
                    .iter()
                    .zip(weights)
                    .map(|(w, m)| Row {
                        state: w.to_string(),
                        weight: m.to_string(),
                        probability: format!("({m}) / ({normalization})"),
                    })
                    .collect(),
            ),
        };
        let mut doc = serde_json::json!({
            "L": self.states.first().map(ColoredWord::len).unwrap_or(0),
            "n": self.states.first().map(ColoredWord::n).unwrap_or(0),
            "mode": mode,
            "rows": rows,
        });
        if let (Some(obj), Some(more)) = (doc.as_object_mut(), extra.as_object()) {
            for (k, v) in more {
                obj.insert(k.clone(), v.clone());
            }
        }
        doc
    }
}

/// `a` and `b` are proportional with a nonzero factor.
pub fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = b.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if a[i].is_zero() {
        return false;
    }
    let c = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &c * y)
}

/// Normalized exact null vector of a numeric generator.
pub fn exact_stationary(gen: &SparseGenerator<BigRational>, rates: &RatePoint) -> Result<StationaryTable> {
    let x = null_vector(gen)?.vector;
    let total: BigRational = x.iter().fold(BigRational::zero(), |a, b| a + b);
    if total.is_zero() {
        return Err(Error::IdentityFailure("null vector sums to zero".into()));
    }
    let probabilities = x.into_iter().map(|v| v / &total).collect();
    Ok(StationaryTable {
        states: gen.states().to_vec(),
        values: TableValues::Numeric { rates: rates.clone(), probabilities },
    })
}

/// Monomial weights over the whole state space.
pub fn symbolic_table(l: usize, n: usize, cap: u64) -> Result<StationaryTable> {
    let states = enumerate_full(l, n, cap)?;
    let weights: Vec<Monomial> = par_iter!(states).map(config_weight).collect();
    let mut normalization = Polynomial::zero(n);
    for m in &weights {
        normalization.add_monomial(m.clone());
    }
    Ok(StationaryTable { states, values: TableValues::Symbolic { weights, normalization } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::build_numeric;

    #[test]
    fn two_one_uniform() {
        let rates = RatePoint::parse("2;7").unwrap();
        let g = build_numeric(2, 1, &rates, u64::MAX).unwrap();
        let t = exact_stationary(&g, &rates).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(t.probabilities().unwrap(), &[half.clone(), half]);
    }

    #[test]
    fn four_two_proportional() {
        let rates = RatePoint::parse("1,2;3,5").unwrap();
        let g = build_numeric(4, 2, &rates, u64::MAX).unwrap();
        let t = exact_stationary(&g, &rates).unwrap();
        assert_eq!(t.states.len(), 48);
        assert!(t.proportional_to_weights());
        let sum: BigRational = t.probabilities().unwrap().iter().fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(sum, BigRational::from_integer(1.into()));
    }

    #[test]
    fn json_rows() {
        let t = symbolic_table(3, 2, u64::MAX).unwrap();
        let doc = t.to_json();
        assert_eq!(doc["mode"], "symbolic");
        assert_eq!(doc["rows"].as_array().unwrap().len(), 12);
    }
}
