use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Polynomial, RatePoint, Var};
use crate::{Error, Result};

/// A quotient of two polynomials, kept unreduced. Equality is decided by
/// cross-multiplication, so no gcd computation is ever needed.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        if num.n() != den.n() {
            return Err(Error::domain("numerator and denominator over different rings"));
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.n());
        RationalFunction { num: p, den }
    }

    pub fn zero(n: usize) -> Self {
        RationalFunction::from_polynomial(Polynomial::zero(n))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `a/b == c/d` iff `a*d == c*b`.
    pub fn eq_exact(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn evaluate(&self, at: &RatePoint) -> Result<BigRational> {
        let d = self.den.evaluate(at);
        if d.is_zero() {
            return Err(Error::domain(format!("denominator vanishes at rates {at}")));
        }
        Ok(self.num.evaluate(at) / d)
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction { num: &self.num + &other.num, den: self.den.clone() };
        }
        RationalFunction { num: &(&self.num * &other.den) + &(&other.num * &self.den), den: &self.den * &other.den }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.scale(&BigRational::from_integer((-1).into())))
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn scale(&self, c: &BigRational) -> RationalFunction {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Renames variables in numerator and denominator; see [`Polynomial::substitute`].
    pub fn substitute(&self, target_n: usize, map: impl Fn(Var) -> Option<Var>) -> Result<RationalFunction> {
        RationalFunction::new(self.num.substitute(target_n, &map), self.den.substitute(target_n, &map))
    }

    /// Applies the index shift `p_j -> p_{j+s}`, `q_j -> q_{j+s}`.
    pub fn shift(&self, s: usize) -> RationalFunction {
        RationalFunction { num: self.num.shift(s), den: self.den.shift(s) }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_multiplication() {
        let n = 2;
        let a = Polynomial::parse(n, "p1 + q1").unwrap();
        let b = Polynomial::parse(n, "p2").unwrap();
        let f = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let g = RationalFunction::new(&a * &a, &a * &b).unwrap();
        assert!(f.eq_exact(&g));
        assert!(!f.eq_exact(&RationalFunction::from_polynomial(a)));
        assert!(RationalFunction::new(b, Polynomial::zero(n)).is_err());
    }

    #[test]
    fn sum_and_evaluate() {
        let n = 1;
        let x = RationalFunction::new(Polynomial::one(n), Polynomial::p(n, 0)).unwrap();
        let y = RationalFunction::new(Polynomial::one(n), Polynomial::q(n, 0)).unwrap();
        let at = RatePoint::parse("2;3").unwrap();
        let s = x.add(&y).evaluate(&at).unwrap();
        assert_eq!(s, BigRational::new(5.into(), 6.into()));
        assert!(x.sub(&x).is_zero());
    }
}
