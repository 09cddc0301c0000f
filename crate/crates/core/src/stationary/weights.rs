use serde::Serialize;

use crate::model::{ColoredWord, Symbol};
use crate::symbolic::{determinant, prod_p, prod_q, Monomial, Polynomial};
use crate::{Error, Result};

/// Weight of a box of row `i` sitting in gap `k` (both zero-based), in the
/// ring with `n` species.
///
/// For `i <= k`: `p_0..p_{i-1} * q_{i+1}..q_k * p_{k+1}..p_{n-1}`.
/// For `i > k`:  `q_0..q_k * p_{k+1}..p_{i-1} * q_{i+1}..q_{n-1}`.
/// Equivalently: `q_j` for `j` in the cyclic interval `(i, k]`, `p_j` for the
/// other `j != i`. Degree is always `n - 1`.
pub fn box_weight(i: usize, k: usize, n: usize) -> Result<Monomial> {
    if i >= n || k >= n {
        return Err(Error::domain(format!("box weight needs labels below n = {n}, got i={i}, k={k}")));
    }
    Ok(box_weight_unchecked(i, k, n))
}

pub(crate) fn box_weight_unchecked(i: usize, k: usize, n: usize) -> Monomial {
    let mut p = vec![0u16; n];
    let mut q = vec![0u16; n];
    let in_q = |j: usize| {
        // j in the cyclic interval (i, k]
        let dj = (j + n - i) % n;
        let dk = (k + n - i) % n;
        dj >= 1 && dj <= dk
    };
    for j in (0..n).filter(|&j| j != i) {
        if in_q(j) {
            q[j] = 1;
        } else {
            p[j] = 1;
        }
    }
    Monomial::from_exponents(&p, &q)
}

/// `W(k) = sum_i box_weight(i, k)`, the total weight available to a box in gap `k`.
pub fn w_box(k: usize, n: usize) -> Result<Polynomial> {
    if k >= n {
        return Err(Error::domain(format!("gap label {k} out of range for n = {n}")));
    }
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        out.add_monomial(box_weight_unchecked(i, k, n));
    }
    Ok(out)
}

/// Product of the box weights of `w`; each box's gap is the label of the
/// nearest bullet strictly to its left, cyclically.
pub fn config_weight(w: &ColoredWord) -> Monomial {
    let n = w.n();
    let gaps = w.gap_labels();
    let mut exps = vec![0u16; 2 * n];
    for (s, &g) in w.letters().iter().zip(&gaps) {
        if let Symbol::Box(i) = *s {
            let m = box_weight_unchecked(i, g, n);
            for (e, d) in exps.iter_mut().zip(m.exponents()) {
                *e += d;
            }
        }
    }
    Monomial::from_exponents(&exps[..n], &exps[n..])
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    /// `det(w(i,k)) == (prod p - prod q)^(n-1)`.
    pub determinant_holds: bool,
    /// `(i, k)` pairs (zero-based) where
    /// `p_k w(i,k) - q_k w(i,k-1) == [i == k] (prod p - prod q)` fails.
    pub two_weights_failures: Vec<(usize, usize)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.determinant_holds && self.two_weights_failures.is_empty()
    }
}

/// Checks the determinant identity and the two-weights relation symbolically.
pub fn weight_identities(n: usize) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::domain("need n >= 1"));
    }
    let w = |i: usize, k: usize| Polynomial::from_monomial(box_weight_unchecked(i, k, n));
    let diff = &prod_p(n) - &prod_q(n);
    let matrix: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|k| w(i, k)).collect()).collect();
    let determinant_holds = determinant(&matrix) == diff.pow((n - 1) as u32);
    let mut failures = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let lhs = &(&Polynomial::p(n, k) * &w(i, k)) - &(&Polynomial::q(n, k) * &w(i, (k + n - 1) % n));
            let rhs = if i == k { diff.clone() } else { Polynomial::zero(n) };
            if lhs != rhs {
                failures.push((i, k));
            }
        }
    }
    Ok(IdentityReport { n, determinant_holds, two_weights_failures: failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{enumerate_full, rotate};

    fn poly(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn w_box_four() {
        assert_eq!(w_box(0, 4).unwrap(), poly(4, "p2 p3 p4 + q1 p2 p3 + q4 q1 p2 + q3 q4 q1"));
        assert_eq!(w_box(1, 4).unwrap(), w_box(0, 4).unwrap().shift(1));
        assert_eq!(w_box(0, 2).unwrap(), poly(2, "p2 + q1"));
        assert_eq!(w_box(1, 2).unwrap(), poly(2, "p1 + q2"));
        assert_eq!(box_weight(0, 0, 1).unwrap(), Monomial::one(1));
        assert_eq!(Polynomial::from_monomial(box_weight(3, 3, 4).unwrap()), poly(4, "p1 p2 p3"));
        assert!(box_weight(4, 0, 4).is_err());
    }

    #[test]
    fn branch_formula_matches() {
        for n in 1..=5 {
            for i in 0..n {
                for k in 0..n {
                    let mut p = vec![0u16; n];
                    let mut q = vec![0u16; n];
                    if i <= k {
                        (0..i).for_each(|j| p[j] = 1);
                        (i + 1..=k).for_each(|j| q[j] = 1);
                        (k + 1..n).for_each(|j| p[j] = 1);
                    } else {
                        (0..=k).for_each(|j| q[j] = 1);
                        (k + 1..i).for_each(|j| p[j] = 1);
                        (i + 1..n).for_each(|j| q[j] = 1);
                    }
                    let m = box_weight(i, k, n).unwrap();
                    assert_eq!(m, Monomial::from_exponents(&p, &q));
                    assert_eq!(m.degree() as usize, n - 1);
                }
            }
        }
    }

    #[test]
    fn running_example_weight() {
        let tau: ColoredWord = "B1 b3 b3 b4 B2 b2 B3 b3 B4 b1".parse().unwrap();
        let want = Monomial::from_exponents(&[2, 4, 2, 2], &[3, 1, 1, 3]);
        assert_eq!(config_weight(&tau), want);
        assert_eq!(config_weight(&"B1 B2 B3".parse().unwrap()), Monomial::one(3));
    }

    #[test]
    fn rotation_invariant() {
        for w in enumerate_full(4, 2, u64::MAX).unwrap() {
            for s in 0..4 {
                assert_eq!(config_weight(&rotate(&w, s)), config_weight(&w));
            }
            assert_eq!(config_weight(&w).degree(), 2);
        }
    }

    #[test]
    fn identities_small() {
        for n in 1..=5 {
            assert!(weight_identities(n).unwrap().holds(), "n={n}");
        }
        let d = determinant(&[
            vec![
                Polynomial::from_monomial(box_weight_unchecked(0, 0, 2)),
                Polynomial::from_monomial(box_weight_unchecked(0, 1, 2)),
            ],
            vec![
                Polynomial::from_monomial(box_weight_unchecked(1, 0, 2)),
                Polynomial::from_monomial(box_weight_unchecked(1, 1, 2)),
            ],
        ]);
        assert_eq!(d, poly(2, "p1 p2 - q1 q2"));
    }
}
