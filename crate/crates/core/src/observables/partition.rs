use num_rational::BigRational;
use serde::Serialize;

use crate::model::{binomial, check_sizes, enumerate_restricted_capped};
use crate::par::*;
use crate::stationary::{config_weight, w_box};
use crate::symbolic::{
    elementary, homogeneous, p_vars, pq_integer, reciprocal_homogeneous_cleared, rect_schur, Monomial, Polynomial, Var,
};
use crate::{Error, Result};

/// Restricted partition function: the sum over weak compositions
/// `(c_1..c_n)` of `L - n` of `prod_k W(k)^{c_k}`, which is the complete
/// homogeneous polynomial `h_{L-n}(W(1), .., W(n))`. Zero when `L < n`.
pub fn partition_function(l: usize, n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::domain("need n >= 1"));
    }
    if l < n {
        return Ok(Polynomial::zero(n));
    }
    let w: Vec<Polynomial> = (0..n).map(|k| w_box(k, n)).collect::<Result<_>>()?;
    homogeneous(l - n, &w)
}

/// The same sum taken literally: every weak composition contributes its
/// product. Slower than [`partition_function`]; kept as a second route.
pub fn partition_function_compositions(l: usize, n: usize) -> Result<Polynomial> {
    check_sizes(l, n)?;
    let w: Vec<Polynomial> = (0..n).map(|k| w_box(k, n)).collect::<Result<_>>()?;
    let mut out = Polynomial::zero(n);
    let mut c = vec![0usize; n];
    fn rec(k: usize, left: usize, c: &mut Vec<usize>, w: &[Polynomial], out: &mut Polynomial) {
        if k + 1 == c.len() {
            c[k] = left;
            let mut t = Polynomial::one(out.n());
            for (wk, &ck) in w.iter().zip(c.iter()) {
                t = &t * &wk.pow(ck as u32);
            }
            *out += &t;
            return;
        }
        for e in 0..=left {
            c[k] = e;
            rec(k + 1, left - e, c, w, out);
        }
    }
    rec(0, l - n, &mut c, &w, &mut out);
    Ok(out)
}

/// Brute-force oracle: the sum of monomial weights over the restricted words.
pub fn partition_function_brute(l: usize, n: usize, cap: u64) -> Result<Polynomial> {
    let states = enumerate_restricted_capped(l, n, cap)?;
    let monomials: Vec<Monomial> = par_iter!(states).map(config_weight).collect();
    let mut out = Polynomial::zero(n);
    for m in monomials {
        out.add_monomial(m);
    }
    Ok(out)
}

/// `Z_{m,n}` for `m = 0..=l`, so recursive formulas can index by size.
#[derive(Clone, Debug)]
pub struct PartitionTable {
    n: usize,
    z: Vec<Polynomial>,
}

impl PartitionTable {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        let z = (0..=l).map(|m| partition_function(m, n)).collect::<Result<_>>()?;
        Ok(PartitionTable { n, z })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Z_{m,n}`; zero for `m < n`.
    pub fn z(&self, m: usize) -> &Polynomial {
        &self.z[m]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    /// `p_i = p`, `q_i = q` for all `i`.
    Identical,
    /// `q_i = p_i` for all `i`.
    Symmetric,
    /// `q_i = 0` for all `i`.
    TotallyAsymmetric,
}

impl std::str::FromStr for SpecialCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identical" => Ok(SpecialCase::Identical),
            "symmetric" => Ok(SpecialCase::Symmetric),
            "totally_asymmetric" | "totally-asymmetric" | "ta" => Ok(SpecialCase::TotallyAsymmetric),
            _ => Err(Error::Parse(format!("unknown special case {s:?}"))),
        }
    }
}

/// One closed form compared against the substituted partition function.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialForm {
    pub label: String,
    pub polynomial: Polynomial,
    pub equal: bool,
    /// A monomial of `substituted - polynomial` when they differ.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialCertificate {
    pub l: usize,
    pub n: usize,
    pub case: SpecialCase,
    pub substituted: Polynomial,
    pub forms: Vec<SpecialForm>,
}

impl SpecialCertificate {
    pub fn holds(&self) -> bool {
        self.forms.iter().all(|f| f.equal)
    }
}

fn form(label: impl Into<String>, substituted: &Polynomial, polynomial: Polynomial) -> SpecialForm {
    let diff = substituted - &polynomial;
    let counterexample = diff.terms().next().map(|(m, c)| format!("{c} * {m}"));
    SpecialForm { label: label.into(), equal: diff.is_zero(), counterexample, polynomial }
}

/// Substitutes the special case into the general `Z_{L,n}` and certifies
/// equality with the known closed forms.
///
/// The identical case lands in the one-species ring with `p = p1`, `q = q1`.
pub fn partition_function_special(l: usize, n: usize, case: SpecialCase) -> Result<SpecialCertificate> {
    check_sizes(l, n)?;
    let z = partition_function(l, n)?;
    let count = binomial(l as u64 - 1, n as u64 - 1).ok_or_else(|| Error::domain("binomial overflow"))?;
    let count = BigRational::from_integer(count.into());
    let m = (l - n) as u32;
    let (substituted, forms) = match case {
        SpecialCase::Identical => {
            let s = z.substitute(1, |v| {
                Some(match v {
                    Var::P(_) => Var::P(0),
                    Var::Q(_) => Var::Q(0),
                })
            });
            let want = pq_integer(n)?.pow(m).scale(&count);
            let f = form("binom(L-1,n-1) [n]_{p,q}^(L-n)", &s, want);
            (s, vec![f])
        }
        SpecialCase::Symmetric => {
            let s = z.substitute(n, |v| {
                Some(match v {
                    Var::P(j) | Var::Q(j) => Var::P(j),
                })
            });
            let want = elementary(n - 1, &p_vars(n))?.pow(m).scale(&count);
            let f = form("binom(L-1,n-1) e_{n-1}(p)^(L-n)", &s, want);
            (s, vec![f])
        }
        SpecialCase::TotallyAsymmetric => {
            let s = z.substitute(n, |v| match v {
                Var::P(j) => Some(Var::P(j)),
                Var::Q(_) => None,
            });
            let h = form("(p_1..p_n)^(L-n) h_{L-n}(1/p)", &s, reciprocal_homogeneous_cleared(l - n, n));
            let schur = form("s_{((L-n)^(n-1))}(p)", &s, rect_schur(l, n)?);
            (s, vec![h, schur])
        }
    };
    Ok(SpecialCertificate { l, n, case, substituted, forms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn small_closed_forms() {
        let w1 = poly(2, "p2 + q1");
        let w2 = poly(2, "p1 + q2");
        let z42 = &(&w1.pow(2) + &(&w1 * &w2)) + &w2.pow(2);
        assert_eq!(partition_function(4, 2).unwrap(), z42);
        assert_eq!(partition_function(3, 2).unwrap(), poly(2, "p1 + p2 + q1 + q2"));
        assert_eq!(partition_function(2, 2).unwrap(), Polynomial::one(2));
        assert!(partition_function(1, 2).unwrap().is_zero());
    }

    #[test]
    fn three_routes_agree() {
        for l in 1..=6 {
            for n in 1..=l {
                let z = partition_function(l, n).unwrap();
                assert_eq!(z, partition_function_compositions(l, n).unwrap(), "L={l} n={n}");
                assert_eq!(z, partition_function_brute(l, n, u64::MAX).unwrap(), "L={l} n={n}");
                assert_eq!(z.homogeneous_degree(), Some(((l - n) * (n - 1)) as u32));
            }
        }
    }

    #[test]
    fn special_four_two() {
        let c = partition_function_special(4, 2, SpecialCase::Identical).unwrap();
        assert!(c.holds());
        assert_eq!(c.substituted, poly(1, "3 p1^2 + 6 p1 q1 + 3 q1^2"));
        let c = partition_function_special(4, 2, SpecialCase::Symmetric).unwrap();
        assert!(c.holds());
        assert_eq!(c.substituted, poly(2, "3 p1^2 + 6 p1 p2 + 3 p2^2"));
        assert!(partition_function_special(4, 2, SpecialCase::TotallyAsymmetric).unwrap().holds());
        for case in [SpecialCase::Identical, SpecialCase::Symmetric, SpecialCase::TotallyAsymmetric] {
            let c = partition_function_special(3, 3, case).unwrap();
            assert!(c.holds());
            assert!(c.forms.iter().all(|f| f.polynomial == Polynomial::one(f.polynomial.n())));
        }
    }
}
