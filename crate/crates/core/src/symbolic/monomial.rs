use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Pow};
use smallvec::SmallVec;

use super::RatePoint;

/// One of the `2n` rate variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P(usize),
    Q(usize),
}

impl Var {
    pub fn index(self, n: usize) -> usize {
        match self {
            Var::P(k) => k,
            Var::Q(k) => n + k,
        }
    }

    pub fn from_index(i: usize, n: usize) -> Var {
        if i < n {
            Var::P(i)
        } else {
            Var::Q(i - n)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::P(k) => write!(f, "p{}", k + 1),
            Var::Q(k) => write!(f, "q{}", k + 1),
        }
    }
}

pub(crate) type Exps = SmallVec<[u16; 16]>;

/// A monic monomial in `p_1..p_n, q_1..q_n`, stored as `2n` exponents.
///
/// Ordered graded-lexicographically: total degree first, then exponents of
/// `p_1, .., p_n, q_1, .., q_n` compared left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: usize,
    exps: Exps,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { n, exps: SmallVec::from_elem(0, 2 * n) }
    }

    pub fn var(n: usize, v: Var) -> Self {
        let mut m = Monomial::one(n);
        m.exps[v.index(n)] = 1;
        m
    }

    /// From explicit `p` and `q` exponent vectors of length `n`.
    pub fn from_exponents(p: &[u16], q: &[u16]) -> Self {
        assert_eq!(p.len(), q.len(), "p and q exponent vectors differ in length");
        let mut exps = Exps::with_capacity(2 * p.len());
        exps.extend_from_slice(p);
        exps.extend_from_slice(q);
        Monomial { n: p.len(), exps }
    }

    pub(crate) fn from_exps(n: usize, exps: Exps) -> Self {
        debug_assert_eq!(exps.len(), 2 * n);
        Monomial { n, exps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn p_exponents(&self) -> &[u16] {
        &self.exps[..self.n]
    }

    pub fn q_exponents(&self) -> &[u16] {
        &self.exps[self.n..]
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.exps[v.index(self.n)]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n, other.n, "monomials over different rings");
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { n: self.n, exps }
    }

    pub fn mul_var(&self, v: Var) -> Monomial {
        let mut m = self.clone();
        m.exps[v.index(self.n)] += 1;
        m
    }

    pub fn pow(&self, e: u16) -> Monomial {
        Monomial { n: self.n, exps: self.exps.iter().map(|a| a * e).collect() }
    }

    /// `p_j -> p_{j+s}`, `q_j -> q_{j+s}` (indices mod n).
    pub fn shift(&self, s: usize) -> Monomial {
        let n = self.n;
        let mut exps = Exps::from_elem(0, 2 * n);
        for j in 0..n {
            exps[(j + s) % n] = self.exps[j];
            exps[n + (j + s) % n] = self.exps[n + j];
        }
        Monomial { n, exps }
    }

    pub fn evaluate(&self, at: &RatePoint) -> BigRational {
        assert_eq!(self.n, at.n(), "rate point has the wrong number of species");
        let mut acc = BigRational::one();
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                let base = match Var::from_index(i, self.n) {
                    Var::P(k) => &at.p()[k],
                    Var::Q(k) => &at.q()[k],
                };
                acc *= Pow::pow(base, e as u32);
            }
        }
        acc
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (Var::from_index(i, self.n), e))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.degree().cmp(&other.degree())).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_order() {
        let n = 2;
        let p1 = Monomial::var(n, Var::P(0));
        let p2 = Monomial::var(n, Var::P(1));
        let q1sq = Monomial::var(n, Var::Q(0)).pow(2);
        assert!(p1 > p2);
        assert!(q1sq > p1);
        assert!(Monomial::one(n) < p2);
    }

    #[test]
    fn shift_moves_labels() {
        let m = Monomial::from_exponents(&[2, 0, 1], &[0, 1, 0]);
        let s = m.shift(1);
        assert_eq!(s.p_exponents(), &[1, 2, 0]);
        assert_eq!(s.q_exponents(), &[0, 0, 1]);
        assert_eq!(m.shift(3), m);
    }

    #[test]
    fn display() {
        let m = Monomial::from_exponents(&[2, 1], &[0, 3]);
        assert_eq!(m.to_string(), "p1^2*p2*q2^3");
        assert_eq!(Monomial::one(3).to_string(), "1");
    }
}
