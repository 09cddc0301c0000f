use num_rational::BigRational;

use super::{Monomial, Polynomial, Var};
use crate::{Error, Result};

/// The symmetric-function bases used by the special-case partition functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetricKind {
    Elementary(usize),
    Homogeneous(usize),
    /// `[n]_{p,q} = p^{n-1} + p^{n-2} q + .. + q^{n-1}` in the one-species
    /// ring, where `p = p1`, `q = q1`.
    PqInteger(usize),
    /// `s_{((L-n)^(n-1))}(p_1..p_n)`, given as `(L, n)`.
    RectSchur(usize, usize),
}

/// Dispatches on [`SymmetricKind`]. `vars` is used by the elementary and
/// homogeneous kinds only.
pub fn symmetric_basis(kind: SymmetricKind, vars: &[Polynomial]) -> Result<Polynomial> {
    match kind {
        SymmetricKind::Elementary(k) => elementary(k, vars),
        SymmetricKind::Homogeneous(k) => homogeneous(k, vars),
        SymmetricKind::PqInteger(n) => pq_integer(n),
        SymmetricKind::RectSchur(l, n) => rect_schur(l, n),
    }
}

fn ring_of(vars: &[Polynomial]) -> Result<usize> {
    let n = vars.first().map(Polynomial::n).ok_or_else(|| Error::domain("need at least one variable"))?;
    if vars.iter().any(|v| v.n() != n) {
        return Err(Error::domain("variables from different rings"));
    }
    Ok(n)
}

/// `e_k(x_1..x_m)`; `e_0 = 1`. Requires `k <= m`.
pub fn elementary(k: usize, vars: &[Polynomial]) -> Result<Polynomial> {
    let ring = ring_of(vars)?;
    if k > vars.len() {
        return Err(Error::domain(format!("e_{k} needs at most {} variables", vars.len())));
    }
    // e[j] holds e_j of the variables seen so far.
    let mut e = vec![Polynomial::zero(ring); k + 1];
    e[0] = Polynomial::one(ring);
    for x in vars {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * x;
            e[j] += &t;
        }
    }
    Ok(e.swap_remove(k))
}

/// `h_k(x_1..x_m)`, the sum of all monomials of degree `k`; `h_0 = 1`.
pub fn homogeneous(k: usize, vars: &[Polynomial]) -> Result<Polynomial> {
    let ring = ring_of(vars)?;
    let mut h = vec![Polynomial::zero(ring); k + 1];
    h[0] = Polynomial::one(ring);
    for x in vars {
        for j in 1..=k {
            let t = &h[j - 1] * x;
            h[j] += &t;
        }
    }
    Ok(h.swap_remove(k))
}

/// `[n]_{p,q}` in the ring with one species.
pub fn pq_integer(n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::domain("[n]_{p,q} needs n >= 1"));
    }
    let mut out = Polynomial::zero(1);
    for i in 0..n {
        out.add_monomial(Monomial::from_exponents(&[(n - 1 - i) as u16], &[i as u16]));
    }
    Ok(out)
}

/// The variables `p_1..p_n` of the `n`-species ring.
pub fn p_vars(n: usize) -> Vec<Polynomial> {
    (0..n).map(|k| Polynomial::var(n, Var::P(k))).collect()
}

/// Rectangular Schur polynomial `s_{((L-n)^(n-1))}(p_1..p_n)` via the
/// Jacobi–Trudi determinant `det(h_{λ_i - i + j})`.
pub fn rect_schur(l: usize, n: usize) -> Result<Polynomial> {
    crate::model::check_sizes(l, n)?;
    let vars = p_vars(n);
    let rows = n - 1;
    let part = (l - n) as i64;
    if rows == 0 || part == 0 {
        return Ok(Polynomial::one(n));
    }
    let max = part as usize + rows;
    let h: Vec<Polynomial> = (0..=max).map(|k| homogeneous(k, &vars)).collect::<Result<_>>()?;
    let matrix: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| {
                    let idx = part - i as i64 + j as i64;
                    if idx < 0 {
                        Polynomial::zero(n)
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(&matrix))
}

/// `(p_1..p_n)^m * h_m(1/p_1, .., 1/p_n)` with denominators cleared, that is
/// the sum over exponent vectors `a` with `|a| = m` of `prod p_i^(m - a_i)`.
pub fn reciprocal_homogeneous_cleared(m: usize, n: usize) -> Polynomial {
    let mut out = Polynomial::zero(n);
    let mut a = vec![0u16; n];
    fn rec(i: usize, left: usize, m: usize, a: &mut Vec<u16>, out: &mut Polynomial) {
        let n = a.len();
        if i + 1 == n {
            a[i] = left as u16;
            let p: Vec<u16> = a.iter().map(|&e| m as u16 - e).collect();
            out.add_monomial(Monomial::from_exponents(&p, &vec![0; n]));
            return;
        }
        for e in 0..=left {
            a[i] = e as u16;
            rec(i + 1, left - e, m, a, out);
        }
    }
    rec(0, m, m, &mut a, &mut out);
    out
}

/// Determinant by Laplace expansion along the first row. Fine for the small
/// matrices (at most 5x5) the identities need.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let size = m.len();
    assert!(m.iter().all(|r| r.len() == size), "determinant of a non-square matrix");
    assert!(size > 0, "determinant of an empty matrix");
    let ring = m[0][0].n();
    let cols: Vec<usize> = (0..size).collect();
    laplace(m, 0, &cols, ring)
}

fn laplace(m: &[Vec<Polynomial>], row: usize, cols: &[usize], ring: usize) -> Polynomial {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut out = Polynomial::zero(ring);
    for (t, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = laplace(m, row + 1, &rest, ring);
        let term = &m[row][c] * &minor;
        if t % 2 == 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    out
}

/// Newton-type relation `sum_{i=0..k} (-1)^i e_i h_{k-i}`, which vanishes for `k >= 1`.
pub fn newton_residual(k: usize, vars: &[Polynomial]) -> Result<Polynomial> {
    let ring = ring_of(vars)?;
    let mut acc = Polynomial::zero(ring);
    for i in 0..=k.min(vars.len()) {
        let t = &elementary(i, vars)? * &homogeneous(k - i, vars)?;
        let sign = BigRational::from_integer(if i % 2 == 0 { 1.into() } else { (-1).into() });
        acc += &t.scale(&sign);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn small_bases() {
        let v = p_vars(2);
        assert_eq!(elementary(1, &v).unwrap(), poly(2, "p1 + p2"));
        assert_eq!(elementary(2, &v).unwrap(), poly(2, "p1 p2"));
        assert_eq!(homogeneous(2, &v).unwrap(), poly(2, "p1^2 + p1 p2 + p2^2"));
        assert_eq!(homogeneous(0, &v).unwrap(), Polynomial::one(2));
        assert!(elementary(3, &v).is_err());
        assert_eq!(pq_integer(2).unwrap(), poly(1, "p1 + q1"));
        assert_eq!(pq_integer(3).unwrap(), poly(1, "p1^2 + p1 q1 + q1^2"));
    }

    #[test]
    fn newton() {
        for n in 1..=4 {
            let v = p_vars(n);
            for k in 1..=5 {
                assert!(newton_residual(k, &v).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn schur_matches_reciprocal_h() {
        for (l, n) in [(4, 2), (5, 3), (6, 3), (6, 4), (3, 3)] {
            assert_eq!(rect_schur(l, n).unwrap(), reciprocal_homogeneous_cleared(l - n, n), "L={l} n={n}");
        }
    }

    #[test]
    fn two_by_two_det() {
        let m = vec![vec![poly(2, "p1"), poly(2, "q1")], vec![poly(2, "q2"), poly(2, "p2")]];
        assert_eq!(determinant(&m), poly(2, "p1 p2 - q1 q2"));
    }
}
