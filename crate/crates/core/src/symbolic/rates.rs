use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::parse_rational;
use crate::{Error, Result};

/// An exact assignment of the forward rates `p_1..p_n` and backward rates
/// `q_1..q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatePoint {
    p: Vec<BigRational>,
    q: Vec<BigRational>,
}

impl RatePoint {
    pub fn new(p: Vec<BigRational>, q: Vec<BigRational>) -> Result<Self> {
        if p.is_empty() || p.len() != q.len() {
            return Err(Error::domain(format!(
                "rate vectors need equal nonzero length, got {} and {}",
                p.len(),
                q.len()
            )));
        }
        if p.iter().chain(&q).any(|r| r.is_negative()) {
            return Err(Error::domain("rates must be nonnegative"));
        }
        Ok(RatePoint { p, q })
    }

    pub fn from_integers(p: &[i64], q: &[i64]) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        RatePoint::new(conv(p), conv(q))
    }

    /// All `p_i = p`, all `q_i = q`.
    pub fn uniform(n: usize, p: BigRational, q: BigRational) -> Result<Self> {
        RatePoint::new(vec![p; n], vec![q; n])
    }

    /// Random positive rationals `a/b` with `1 <= a <= max_num`, `1 <= b <= max_den`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R, max_num: i64, max_den: i64) -> Self {
        let mut draw = || {
            let a: i64 = rng.random_range(1..=max_num);
            let b: i64 = rng.random_range(1..=max_den);
            BigRational::new(a.into(), b.into())
        };
        let p = (0..n).map(|_| draw()).collect();
        let q = (0..n).map(|_| draw()).collect();
        RatePoint { p, q }
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn p(&self) -> &[BigRational] {
        &self.p
    }

    pub fn q(&self) -> &[BigRational] {
        &self.q
    }

    pub fn all_positive(&self) -> bool {
        self.p.iter().chain(&self.q).all(|r| r.is_positive())
    }

    /// Zero-based labels `i` with `q_i = 0`.
    pub fn zero_q(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.q[i].is_zero()).collect()
    }

    /// Checks that the chain is usable at these rates: all positive, or every
    /// `p` positive with some `q` set to zero.
    pub fn check_usable(&self) -> Result<()> {
        if self.p.iter().any(|r| r.is_zero()) {
            return Err(Error::domain("forward rates p must be strictly positive"));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> (Vec<f64>, Vec<f64>) {
        let f = |v: &[BigRational]| v.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect();
        (f(&self.p), f(&self.q))
    }

    /// Parses `"p1,..,pn;q1,..,qn"` where each entry is an integer, `a/b`, or
    /// a decimal such as `0.25` (read exactly).
    pub fn parse(s: &str) -> Result<Self> {
        let (ps, qs) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("rates {s:?} need the form \"p1,..,pn;q1,..,qn\"")))?;
        let list =
            |part: &str| -> Result<Vec<BigRational>> { part.split(',').map(|x| parse_rational(x.trim())).collect() };
        let p = list(ps)?;
        let q = list(qs)?;
        RatePoint::new(p, q).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads `{"p": [..], "q": [..]}`; entries may be JSON numbers or strings.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: RatesFile = serde_json::from_str(s)?;
        let conv = |v: Vec<serde_json::Value>| -> Result<Vec<BigRational>> {
            v.into_iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => parse_rational(&s),
                    serde_json::Value::Number(num) => parse_rational(&num.to_string()),
                    other => Err(Error::Parse(format!("rate entry {other} is not a number"))),
                })
                .collect()
        };
        RatePoint::new(conv(file.p)?, conv(file.q)?).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        RatePoint::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let s = |v: &[BigRational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>();
        serde_json::json!({ "p": s(&self.p), "q": s(&self.q) })
    }
}

#[derive(Deserialize, Serialize)]
struct RatesFile {
    p: Vec<serde_json::Value>,
    q: Vec<serde_json::Value>,
}

impl fmt::Display for RatePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigRational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.p), join(&self.q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parse_mixed_forms() {
        let rp = RatePoint::parse("1, 2/3 ; 0.25,5").unwrap();
        assert_eq!(rp.p(), &[r(1, 1), r(2, 3)]);
        assert_eq!(rp.q(), &[r(1, 4), r(5, 1)]);
        assert_eq!(rp.to_string(), "1,2/3;1/4,5");
        assert_eq!(RatePoint::parse(&rp.to_string()).unwrap(), rp);
    }

    #[test]
    fn parse_rejects() {
        assert!(RatePoint::parse("1,2").is_err());
        assert!(RatePoint::parse("1,2;3").is_err());
        assert!(RatePoint::parse("1,-2;3,4").is_err());
        assert!(RatePoint::parse("1,x;3,4").is_err());
        assert!(RatePoint::parse("1,2;3,1/0").is_err());
    }

    #[test]
    fn json_round_trip() {
        let rp = RatePoint::from_json_str(r#"{"p": [1, "3/2"], "q": [0.5, "2"]}"#).unwrap();
        assert_eq!(rp.p(), &[r(1, 1), r(3, 2)]);
        assert_eq!(rp.q(), &[r(1, 2), r(2, 1)]);
        let back = RatePoint::from_json_str(&rp.to_json().to_string()).unwrap();
        assert_eq!(back, rp);
    }
}
