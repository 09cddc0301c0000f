//! Expectation sums over a stationary table.
//!
//! Each state contributes, per observable slot, an integer linear form in
//! `1, p_1..p_n, q_1..q_n`. The slot value is the sum over states of the
//! state's mass times its linear form. Masses are monomial weights in
//! symbolic mode and exact probabilities in numeric mode.

use num_rational::BigRational;
use num_traits::Zero;

use crate::dynamics::outgoing_unchecked;
use crate::model::{ColoredWord, Symbol};
use crate::par::*;
use crate::stationary::config_weight;
use crate::symbolic::{Polynomial, RatePoint, Var};

/// Slot layout. Rows are `0..n`, columns and boundaries are `0..L`; boundary
/// `b` separates columns `b` and `b + 1 (mod L)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    pub l: usize,
    pub n: usize,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum Slot {
    /// `<eta_{i,j}>`
    Eta(usize, usize),
    /// `<tau_{i,j}>`
    Tau(usize, usize),
    /// `p_i <tau_{i,b} sum_k eta_{k,b+1}> - q_i <tau_{i,b+1} sum_k eta_{k,b}>`
    BulletEdge(usize, usize),
    /// Signed bullet crossings of boundary `b` in row `i`, from displacement records.
    BulletEdgeCrossings(usize, usize),
    /// Signed box crossings of boundary `b`, all rows, moved box included.
    BoxColumn(usize),
    /// Signed crossings of boundary `b` by boxes that stay in row `i`.
    BoxRow(usize, usize),
    /// `<eta_{i,b} sum_{k != i} q_k tau_{k,b+1}> - <eta_{i,b+1} sum_{k != i} p_k tau_{k,b}>`
    BoxRowSwaps(usize, usize),
    /// `sum_j p_i <eta_{i,j} tau_{i,j-1}>`
    VerticalUp(usize),
    /// `sum_j q_i <eta_{i,j} tau_{i,j+1}>`
    VerticalDown(usize),
}

impl Layout {
    pub fn slots(&self) -> usize {
        let (l, n) = (self.l, self.n);
        6 * n * l + l + 2 * n
    }

    pub fn index(&self, s: Slot) -> usize {
        let (l, n) = (self.l, self.n);
        let nl = n * l;
        match s {
            Slot::Eta(i, j) => i * l + j,
            Slot::Tau(i, j) => nl + i * l + j,
            Slot::BulletEdge(i, b) => 2 * nl + i * l + b,
            Slot::BulletEdgeCrossings(i, b) => 3 * nl + i * l + b,
            Slot::BoxRow(i, b) => 4 * nl + i * l + b,
            Slot::BoxRowSwaps(i, b) => 5 * nl + i * l + b,
            Slot::BoxColumn(b) => 6 * nl + b,
            Slot::VerticalUp(i) => 6 * nl + l + i,
            Slot::VerticalDown(i) => 6 * nl + l + n + i,
        }
    }

    /// Width of a linear form: `2n` rate coefficients then a constant.
    fn width(&self) -> usize {
        2 * self.n + 1
    }
}

/// Sparse per-state contributions: `(slot, coefficient index, value)`.
type Local = Vec<(usize, usize, i64)>;

fn local(lay: &Layout, w: &ColoredWord) -> Local {
    let (l, n) = (lay.l, lay.n);
    let konst = 2 * n;
    let var = |v: Var| v.index(n);
    let letters = w.letters();
    let at = |j: usize| letters[j % l];
    let mut out = Local::new();
    for (j, s) in letters.iter().enumerate() {
        match *s {
            Symbol::Box(i) => out.push((lay.index(Slot::Eta(i, j)), konst, 1)),
            Symbol::Bullet(i) => out.push((lay.index(Slot::Tau(i, j)), konst, 1)),
        }
    }
    for b in 0..l {
        let (left, right) = (at(b), at(b + 1));
        // bullet edge, displayed form
        if let (Symbol::Bullet(i), Symbol::Box(_)) = (left, right) {
            out.push((lay.index(Slot::BulletEdge(i, b)), var(Var::P(i)), 1));
        }
        if let (Symbol::Box(_), Symbol::Bullet(i)) = (left, right) {
            out.push((lay.index(Slot::BulletEdge(i, b)), var(Var::Q(i)), -1));
        }
        // box row current, swap terms only
        if let (Symbol::Box(i), Symbol::Bullet(k)) = (left, right) {
            if k != i {
                out.push((lay.index(Slot::BoxRowSwaps(i, b)), var(Var::Q(k)), 1));
            }
        }
        if let (Symbol::Bullet(k), Symbol::Box(i)) = (left, right) {
            if k != i {
                out.push((lay.index(Slot::BoxRowSwaps(i, b)), var(Var::P(k)), -1));
            }
        }
        // vertical one-sided currents
        if let (Symbol::Bullet(k), Symbol::Box(i)) = (left, right) {
            if k == i {
                out.push((lay.index(Slot::VerticalUp(i)), var(Var::P(i)), 1));
            }
        }
        if let (Symbol::Box(i), Symbol::Bullet(k)) = (left, right) {
            if k == i {
                out.push((lay.index(Slot::VerticalDown(i)), var(Var::Q(i)), 1));
            }
        }
    }
    for t in outgoing_unchecked(w) {
        let rate = var(t.rate_symbol());
        for d in &t.displacements {
            d.for_each_crossing(l, |b, sign| match d.before {
                Symbol::Bullet(i) => out.push((lay.index(Slot::BulletEdgeCrossings(i, b)), rate, sign)),
                Symbol::Box(i) => {
                    out.push((lay.index(Slot::BoxColumn(b)), rate, sign));
                    if !d.vertical {
                        out.push((lay.index(Slot::BoxRow(i, b)), rate, sign));
                    }
                }
            });
        }
    }
    out
}

/// Symbolic slot numerators over the common denominator `sum_w wt(w)`,
/// which equals `L * Z_{L,n}`.
pub(crate) fn symbolic_slots(lay: &Layout, states: &[ColoredWord]) -> (Vec<Polynomial>, Polynomial) {
    let n = lay.n;
    let width = lay.width();
    let locals: Vec<_> = par_iter!(states).map(|w| (config_weight(w), local(lay, w))).collect();
    let mut acc = vec![Polynomial::zero(n); lay.slots()];
    let mut total = Polynomial::zero(n);
    for (m, loc) in locals {
        total.add_monomial(m.clone());
        for (slot, c, v) in loc {
            let term = if c + 1 == width { m.clone() } else { m.mul_var(Var::from_index(c, n)) };
            acc[slot].add_term(term, BigRational::from_integer(v.into()));
        }
    }
    (acc, total)
}

/// Numeric slot values from exact stationary probabilities.
pub(crate) fn numeric_slots(
    lay: &Layout,
    states: &[ColoredWord],
    probabilities: &[BigRational],
    rates: &RatePoint,
) -> Vec<BigRational> {
    let n = lay.n;
    let coef: Vec<BigRational> = (0..2 * n)
        .map(|c| match Var::from_index(c, n) {
            Var::P(k) => rates.p()[k].clone(),
            Var::Q(k) => rates.q()[k].clone(),
        })
        .chain(std::iter::once(BigRational::from_integer(1.into())))
        .collect();
    let locals: Vec<Local> = par_iter!(states).map(|w| local(lay, w)).collect();
    let mut acc = vec![BigRational::zero(); lay.slots()];
    for (loc, p) in locals.iter().zip(probabilities) {
        for &(slot, c, v) in loc {
            acc[slot] += p * &coef[c] * BigRational::from_integer(v.into());
        }
    }
    acc
}
