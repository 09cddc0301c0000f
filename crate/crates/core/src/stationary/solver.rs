//! Exact null vectors of rational generators.
//!
//! The generator is scaled to integers and solved modulo several word-sized
//! primes by sparse elimination; the residues are combined by the Chinese
//! remainder theorem and lifted to rationals by rational reconstruction.
//! The lifted vector is then checked against the generator over `Q`, and a
//! nonsingular `(N-1)`-minor found modulo a prime certifies that the null
//! space is one-dimensional.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dynamics::{strongly_connected, SparseGenerator};
use crate::{Error, Result};

/// Upper bound on the number of primes tried before giving up.
pub const MAX_PRIMES: usize = 48;

/// Outcome of an exact solve.
#[derive(Clone, Debug)]
pub struct NullVector {
    /// Null vector scaled so that entry 0 equals 1.
    pub vector: Vec<BigRational>,
    pub primes_used: usize,
}

/// Solves `G x = 0`, `x_0 = 1`, after checking irreducibility.
pub fn null_vector(gen: &SparseGenerator<BigRational>) -> Result<NullVector> {
    let n = gen.len();
    if n == 0 {
        return Err(Error::domain("empty generator"));
    }
    if !strongly_connected(&gen.adjacency()) {
        return Err(Error::Reducible { reason: "the transition graph is not strongly connected".into() });
    }
    if n == 1 {
        return Ok(NullVector { vector: vec![BigRational::one()], primes_used: 0 });
    }
    let system = IntegerSystem::from_generator(gen);
    let mut residues: Vec<Vec<u64>> = Vec::new();
    let mut moduli: Vec<u64> = Vec::new();
    let mut primes = PrimeStream::new();
    let mut tried = 0;
    while tried < MAX_PRIMES {
        let p = primes.next_prime();
        tried += 1;
        let Some(x) = system.solve_mod(p) else {
            // singular modulo this prime; the minor may still be nonzero over Z
            continue;
        };
        residues.push(x);
        moduli.push(p);
        if moduli.len() < 2 {
            continue;
        }
        if let Some(vector) = reconstruct(&residues, &moduli) {
            if system.verify(&vector) {
                return Ok(NullVector { vector, primes_used: moduli.len() });
            }
        }
    }
    if moduli.is_empty() {
        // every prime saw a singular minor: the rank over Q is below N-1
        return Err(Error::Reducible { reason: "generator rank is below N-1".into() });
    }
    Err(Error::SolverExhausted { primes: tried })
}

/// Integer form of the linear system: equation rows indexed by target state,
/// unknowns by source state, after multiplying by a common denominator.
struct IntegerSystem {
    n: usize,
    rows: Vec<Vec<(u32, BigInt)>>,
}

impl IntegerSystem {
    fn from_generator(gen: &SparseGenerator<BigRational>) -> Self {
        let n = gen.len();
        let mut lcm = BigInt::one();
        for (_, _, r) in gen.entries() {
            lcm = lcm.lcm(r.denom());
        }
        for d in gen.diagonal() {
            lcm = lcm.lcm(d.denom());
        }
        let scale = |r: &BigRational| -> BigInt { r.numer() * (&lcm / r.denom()) };
        let mut rows: Vec<Vec<(u32, BigInt)>> = vec![Vec::new(); n];
        for (s, t, r) in gen.entries() {
            rows[*t].push((*s as u32, scale(r)));
        }
        for (s, d) in gen.diagonal().iter().enumerate() {
            if !d.is_zero() {
                rows[s].push((s as u32, scale(d)));
            }
        }
        for r in &mut rows {
            r.sort_by_key(|e| e.0);
        }
        IntegerSystem { n, rows }
    }

    /// Solves rows `1..n` with `x_0 = 1` modulo `p`. `None` if the minor is
    /// singular modulo `p`.
    fn solve_mod(&self, p: u64) -> Option<Vec<u64>> {
        let rows: Vec<Vec<(u32, u64)>> = self.rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .filter_map(|(c, v)| {
                        let m = reduce(v, p);
                        (m != 0).then_some((*c, m))
                    })
                    .collect()
            })
            .collect();
        let x = sparse_solve_mod(self.n, rows, p)?;
        Some(x)
    }

    fn verify(&self, x: &[BigRational]) -> bool {
        // clear denominators of x first so the check runs over integers
        let mut den = BigInt::one();
        for v in x {
            den = den.lcm(v.denom());
        }
        let xi: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        self.rows.iter().all(|row| {
            let mut acc = BigInt::zero();
            for (c, a) in row {
                acc += a * &xi[*c as usize];
            }
            acc.is_zero()
        })
    }
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let m = v.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits in u64")
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Sparse Gaussian elimination modulo `p` on `rows` (unknowns `0..n`, with
/// unknown 0 fixed to 1). Pivots are chosen Markowitz-style: the active column
/// with the fewest entries, then the shortest row containing it.
fn sparse_solve_mod(n: usize, mut rows: Vec<Vec<(u32, u64)>>, p: u64) -> Option<Vec<u64>> {
    let m = rows.len();
    debug_assert_eq!(m, n - 1);
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut col_count = vec![0usize; n];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut row_active = vec![true; m];
    let mut col_done = vec![false; n];
    col_done[0] = true;
    let mut pivots: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut scratch: Vec<(u32, u64)> = Vec::new();
    for _ in 0..m {
        let mut best = None;
        let mut best_count = usize::MAX;
        for c in 1..n {
            if !col_done[c] && col_count[c] > 0 && col_count[c] < best_count {
                best_count = col_count[c];
                best = Some(c);
                if best_count == 1 {
                    break;
                }
            }
        }
        let c = best?;
        // live rows holding column c
        let mut holders: Vec<usize> = col_rows[c]
            .iter()
            .map(|&r| r as usize)
            .filter(|&r| row_active[r] && rows[r].binary_search_by_key(&(c as u32), |e| e.0).is_ok())
            .collect();
        holders.sort_unstable();
        holders.dedup();
        col_rows[c].clear();
        let pr = *holders.iter().min_by_key(|&&r| (rows[r].len(), r))?;
        row_active[pr] = false;
        col_done[c] = true;
        for &(cc, _) in &rows[pr] {
            col_count[cc as usize] -= 1;
        }
        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = pivot_row[pivot_row.binary_search_by_key(&(c as u32), |e| e.0).unwrap()].1;
        let pinv = inv_mod(pv, p);
        for &r in holders.iter().filter(|&&r| r != pr) {
            let idx = rows[r].binary_search_by_key(&(c as u32), |e| e.0).unwrap();
            let f = mul_mod(rows[r][idx].1, pinv, p);
            // rows[r] -= f * pivot_row
            scratch.clear();
            let old = std::mem::take(&mut rows[r]);
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot_row.len() {
                let take_old = j >= pivot_row.len() || (i < old.len() && old[i].0 < pivot_row[j].0);
                let take_piv = i >= old.len() || (j < pivot_row.len() && pivot_row[j].0 < old[i].0);
                if take_old {
                    scratch.push(old[i]);
                    i += 1;
                } else if take_piv {
                    let (cc, v) = pivot_row[j];
                    let nv = p - mul_mod(f, v, p);
                    if nv != p {
                        scratch.push((cc, nv));
                        col_count[cc as usize] += 1;
                        col_rows[cc as usize].push(r as u32);
                    }
                    j += 1;
                } else {
                    let (cc, a) = old[i];
                    let b = mul_mod(f, pivot_row[j].1, p);
                    let nv = if a >= b { a - b } else { a + p - b };
                    if nv != 0 {
                        scratch.push((cc, nv));
                    } else {
                        col_count[cc as usize] -= 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
            rows[r] = scratch.clone();
        }
        rows[pr] = pivot_row;
        pivots.push((pr, c));
    }
    // back substitution in reverse pivot order
    let mut x = vec![0u64; n];
    x[0] = 1;
    for &(r, c) in pivots.iter().rev() {
        let mut acc = 0u64;
        let mut diag = 0u64;
        for &(cc, v) in &rows[r] {
            if cc as usize == c {
                diag = v;
            } else {
                acc = (acc + mul_mod(v, x[cc as usize], p)) % p;
            }
        }
        x[c] = mul_mod((p - acc) % p, inv_mod(diag, p), p);
    }
    Some(x)
}

fn reconstruct(residues: &[Vec<u64>], moduli: &[u64]) -> Option<Vec<BigRational>> {
    let n = residues[0].len();
    let mut modulus = BigInt::one();
    for &p in moduli {
        modulus *= BigInt::from(p);
    }
    let bound = (&modulus / BigInt::from(2u8)).sqrt();
    (0..n)
        .map(|i| {
            let v = crt(residues.iter().map(|r| r[i]), moduli);
            rational_reconstruct(&v, &modulus, &bound)
        })
        .collect()
}

fn crt(values: impl Iterator<Item = u64>, moduli: &[u64]) -> BigInt {
    let mut acc = BigInt::zero();
    let mut m = BigInt::one();
    for (v, &p) in values.zip(moduli) {
        // acc + m * t == v (mod p)
        let acc_mod = reduce(&acc, p);
        let m_mod = reduce(&m, p);
        let diff = (v + p - acc_mod) % p;
        let t = mul_mod(diff, inv_mod(m_mod, p), p);
        acc += &m * BigInt::from(t);
        m *= BigInt::from(p);
    }
    acc
}

/// Finds `a/b` with `|a|, b <= bound` and `a == b * v (mod m)`.
fn rational_reconstruct(v: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), v.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Primes below `2^62`, largest first, by deterministic Miller–Rabin.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return c;
            }
        }
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense exact Gaussian elimination over `Q` for small generators; used to
/// cross-check the modular solver.
pub fn null_vector_dense(gen: &SparseGenerator<BigRational>) -> Result<Vec<BigRational>> {
    let n = gen.len();
    if n == 0 {
        return Err(Error::domain("empty generator"));
    }
    let mut a = vec![vec![BigRational::zero(); n]; n];
    for (s, t, r) in gen.entries() {
        a[*t][*s] += r;
    }
    for (s, d) in gen.diagonal().iter().enumerate() {
        a[s][s] += d;
    }
    // reduced row echelon form
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, pr);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot = a[row].clone();
        for (r, line) in a.iter_mut().enumerate() {
            if r != row && !line[col].is_zero() {
                let f = line[col].clone();
                for (x, y) in line.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() != n - 1 {
        return Err(Error::Reducible { reason: format!("null space has dimension {}", n - pivot_cols.len()) });
    }
    let free = (0..n).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = -a[r][free].clone();
    }
    let x0 = x[0].clone();
    if x0.is_zero() {
        return Ok(x);
    }
    Ok(x.into_iter().map(|v| v / &x0).collect())
}
