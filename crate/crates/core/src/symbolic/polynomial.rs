use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Exps, Monomial, Var};
use super::RatePoint;
use crate::{Error, Result};

/// A polynomial in `p_1..p_n, q_1..q_n` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Polynomial::from_term(Monomial::one(n), c)
    }

    pub fn integer(n: usize, c: i64) -> Self {
        Polynomial::constant(n, BigRational::from_integer(c.into()))
    }

    pub fn var(n: usize, v: Var) -> Self {
        Polynomial::from_monomial(Monomial::var(n, v))
    }

    pub fn p(n: usize, k: usize) -> Self {
        Polynomial::var(n, Var::P(k))
    }

    pub fn q(n: usize, k: usize) -> Self {
        Polynomial::var(n, Var::Q(k))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Polynomial::from_term(m, BigRational::one())
    }

    pub fn from_term(m: Monomial, c: BigRational) -> Self {
        let n = m.n();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical display order (descending graded lex).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when every term has degree `d`; `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.n(), self.n, "monomial from a different ring");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        self.add_term(m, BigRational::one());
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate(&self, at: &RatePoint) -> BigRational {
        self.terms.iter().map(|(m, c)| m.evaluate(at) * c).fold(BigRational::zero(), |a, b| a + b)
    }

    /// Applies `p_j -> p_{j+s}`, `q_j -> q_{j+s}` with indices mod n.
    pub fn shift(&self, s: usize) -> Polynomial {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.shift(s), c.clone())).collect() }
    }

    /// Renames variables into a ring with `target_n` species. Variables mapped
    /// to `None` are set to zero, which drops every term containing them.
    pub fn substitute(&self, target_n: usize, map: impl Fn(Var) -> Option<Var>) -> Polynomial {
        let mut out = Polynomial::zero(target_n);
        'terms: for (m, c) in &self.terms {
            let mut exps = Exps::from_elem(0, 2 * target_n);
            for (v, e) in m.vars() {
                match map(v) {
                    Some(t) => exps[t.index(target_n)] += e,
                    None => continue 'terms,
                }
            }
            out.add_term(Monomial::from_exps(target_n, exps), c.clone());
        }
        out
    }

    /// Parses sums of terms such as `2*p2^2 - 1/3 p1 q2 + 1`.
    ///
    /// Factors are a rational coefficient, `pK` or `qK` (one-based) with
    /// optional `^e`. Juxtaposition and `*` both multiply. No parentheses.
    pub fn parse(n: usize, s: &str) -> Result<Polynomial> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty input"));
        }
        let mut out = Polynomial::zero(n);
        let chars: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = BigRational::one();
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let mut coef = sign;
            let mut mono = Monomial::one(n);
            let mut saw_factor = false;
            while i < chars.len() && chars[i] != '+' && chars[i] != '-' {
                if chars[i] == '*' {
                    i += 1;
                    continue;
                }
                if chars[i].is_ascii_digit() {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                        i += 1;
                    }
                    let lit: String = chars[start..i].iter().collect();
                    let r = super::parse_rational(&lit)?;
                    coef *= r;
                } else if chars[i] == 'p' || chars[i] == 'q' {
                    let kind = chars[i];
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let k: usize = chars[start..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| bad("missing variable index"))?;
                    if k == 0 || k > n {
                        return Err(bad("variable index out of range"));
                    }
                    let mut e = 1u16;
                    if i < chars.len() && chars[i] == '^' {
                        i += 1;
                        let start = i;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        e = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("bad exponent"))?;
                    }
                    let v = if kind == 'p' { Var::P(k - 1) } else { Var::Q(k - 1) };
                    mono = mono.mul(&Monomial::var(n, v).pow(e));
                } else {
                    return Err(bad("unexpected character"));
                }
                saw_factor = true;
            }
            if !saw_factor {
                return Err(bad("dangling sign"));
            }
            out.add_term(mono, coef);
        }
        Ok(out)
    }

    fn check_ring(&self, other: &Polynomial) {
        assert_eq!(self.n, other.n, "polynomials over different rings (n = {} vs {})", self.n, other.n);
    }

    /// Content check used by exporters: all coefficients are integers.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn integer_coefficient_sum(&self) -> BigInt {
        self.terms.values().map(|c| c.to_integer()).sum()
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct TermJson {
    p: Vec<u16>,
    q: Vec<u16>,
    coef: String,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms()
            .map(|(m, c)| TermJson { p: m.p_exponents().to_vec(), q: m.q_exponents().to_vec(), coef: c.to_string() })
            .collect();
        PolyJson { n: self.n, terms }.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let mut out = Polynomial::zero(raw.n);
        for t in raw.terms {
            if t.p.len() != raw.n || t.q.len() != raw.n {
                return Err(D::Error::custom("exponent vector length differs from n"));
            }
            let c = super::parse_rational(&t.coef).map_err(D::Error::custom)?;
            out.add_term(Monomial::from_exponents(&t.p, &t.q), c);
        }
        Ok(out)
    }
}

/// Arithmetic request for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a Polynomial, &'a Polynomial),
    Mul(&'a Polynomial, &'a Polynomial),
    Pow(&'a Polynomial, u32),
}

/// Checked arithmetic: operands over different rings give a domain error
/// instead of the operator panic.
pub fn poly_arith(op: PolyOp<'_>) -> Result<Polynomial> {
    let same = |a: &Polynomial, b: &Polynomial| {
        if a.n != b.n {
            Err(Error::domain(format!("operands have n = {} and n = {}", a.n, b.n)))
        } else {
            Ok(())
        }
    };
    match op {
        PolyOp::Add(a, b) => same(a, b).map(|_| a + b),
        PolyOp::Mul(a, b) => same(a, b).map(|_| a * b),
        PolyOp::Pow(a, e) => Ok(a.pow(e)),
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_ring(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn evaluate_product() {
        let f = &poly(2, "p1 + q2") * &poly(2, "p2 + q1");
        let at = RatePoint::parse("1,1;1,1").unwrap();
        assert_eq!(f.evaluate(&at), BigRational::from_integer(4.into()));
    }

    #[test]
    fn zero_power_is_one() {
        assert_eq!(poly(3, "p1 + 7 q3").pow(0), Polynomial::one(3));
        assert_eq!(Polynomial::zero(2).pow(0), Polynomial::one(2));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let f = poly(2, "p1 - p1 + q1");
        assert_eq!(f, poly(2, "q1"));
        assert_eq!(f.len(), 1);
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn display_canonical_order() {
        let f = poly(2, "q1 + p2 + 2 p1^2 - 1/2");
        assert_eq!(f.to_string(), "2*p1^2 + p2 + q1 - 1/2");
    }

    #[test]
    fn json_round_trip() {
        let f = poly(2, "2 p1^2 q2 - 1/3 q1 + 5");
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"terms":[{"p":[2,0],"q":[0,1],"coef":"2"},{"p":[0,0],"q":[1,0],"coef":"-1/3"},{"p":[0,0],"q":[0,0],"coef":"5"}]}"#
        );
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn parse_errors() {
        assert!(Polynomial::parse(2, "p3").is_err());
        assert!(Polynomial::parse(2, "p1 + ").is_err());
        assert!(Polynomial::parse(2, "x1").is_err());
    }

    #[test]
    fn mismatched_rings() {
        let a = Polynomial::one(2);
        let b = Polynomial::one(3);
        assert!(matches!(poly_arith(PolyOp::Add(&a, &b)), Err(Error::Domain(_))));
        assert!(poly_arith(PolyOp::Mul(&a, &a)).is_ok());
    }

    #[test]
    fn substitution_and_shift() {
        let f = poly(2, "p1 q2 + p2^2");
        // identical rates: every p_i -> p, q_i -> q
        let g = f.substitute(1, |v| match v {
            Var::P(_) => Some(Var::P(0)),
            Var::Q(_) => Some(Var::Q(0)),
        });
        assert_eq!(g, poly(1, "p1 q1 + p1^2"));
        // totally asymmetric: drop q
        let h = f.substitute(2, |v| matches!(v, Var::P(_)).then_some(v));
        assert_eq!(h, poly(2, "p2^2"));
        assert_eq!(f.shift(1), poly(2, "p2 q1 + p1^2"));
    }
}
