//! Exact polynomial algebra in the rate variables `p_1..p_n, q_1..q_n`.

mod monomial;
mod polynomial;
mod rates;
mod ratfun;
mod symmetric;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use monomial::{Monomial, Var};
pub use polynomial::{poly_arith, PolyOp, Polynomial};
pub use rates::RatePoint;
pub use ratfun::RationalFunction;
pub use symmetric::{
    determinant, elementary, homogeneous, newton_residual, p_vars, pq_integer, reciprocal_homogeneous_cleared,
    rect_schur, symmetric_basis, SymmetricKind,
};

use crate::{Error, Result};

/// Parses `7`, `-3/4` or `0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("{s:?} is not a rational number"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(Error::Parse(format!("{s:?} has a zero denominator")));
        }
        return Ok(BigRational::new(a, b));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) || (int_digits.is_empty() && frac.is_empty()) {
            return Err(bad());
        }
        let whole: BigInt =
            if int_digits.is_empty() { BigInt::zero() } else { int_digits.parse().map_err(|_| bad())? };
        let frac_num: BigInt = if frac.is_empty() { BigInt::zero() } else { frac.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = BigRational::new(whole * &scale + frac_num, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let a: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(a))
}

/// Values the expectation engine can sum: exact rationals for numeric mode
/// and polynomials for symbolic mode.
pub trait Scalar: Clone + Send + Sync + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn add_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn is_zero_value(&self) -> bool;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.n())
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -(self.clone())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// `p_1 * .. * p_n`.
pub fn prod_p(n: usize) -> Polynomial {
    Polynomial::from_monomial(Monomial::from_exponents(&vec![1; n], &vec![0; n]))
}

/// `q_1 * .. * q_n`.
pub fn prod_q(n: usize) -> Polynomial {
    Polynomial::from_monomial(Monomial::from_exponents(&vec![0; n], &vec![1; n]))
}
