use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::oracle::{numeric_slots, symbolic_slots, Layout, Slot};
use super::partition::PartitionTable;
use crate::dynamics::{build_numeric_on, GeneratorMode};
use crate::model::{check_sizes, enumerate_full};
use crate::stationary::{box_weight, exact_stationary, w_box};
use crate::symbolic::{prod_p, prod_q, Polynomial, RatePoint, RationalFunction};
use crate::{Error, Result};

/// An exact value: a rational in numeric mode, a rational function of the
/// rates in symbolic mode.
#[derive(Clone, Debug)]
pub enum Exact {
    Numeric(BigRational),
    Symbolic(RationalFunction),
}

impl Exact {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exact::Numeric(r) => Some(r),
            Exact::Symbolic(_) => None,
        }
    }

    pub fn as_function(&self) -> Option<&RationalFunction> {
        match self {
            Exact::Numeric(_) => None,
            Exact::Symbolic(f) => Some(f),
        }
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Exact::Numeric(a), Exact::Numeric(b)) => a == b,
            (Exact::Symbolic(a), Exact::Symbolic(b)) => a.eq_exact(b),
            _ => false,
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Numeric(r) => write!(f, "{r}"),
            Exact::Symbolic(r) => write!(f, "{r}"),
        }
    }
}

/// A closed form next to its expectation-based oracle.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub closed_form: Exact,
    pub oracle: Exact,
    pub equal: bool,
}

impl Comparison {
    fn new(closed_form: Exact, oracle: Exact) -> Self {
        let equal = closed_form == oracle;
        Comparison { closed_form, oracle, equal }
    }
}

/// Flat export row. `row` and `column` are one-based.
#[derive(Clone, Debug, Serialize)]
pub struct ObservableRow {
    pub observable: String,
    pub row: Option<usize>,
    pub column: Option<usize>,
    pub closed_form: String,
    pub oracle: String,
    pub equal: bool,
}

fn push_row(out: &mut Vec<ObservableRow>, name: &str, row: Option<usize>, column: Option<usize>, c: &Comparison) {
    out.push(ObservableRow {
        observable: name.to_string(),
        row: row.map(|i| i + 1),
        column: column.map(|j| j + 1),
        closed_form: c.closed_form.to_string(),
        oracle: c.oracle.to_string(),
        equal: c.equal,
    });
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    pub l: usize,
    pub n: usize,
    /// `[i][j]`: `<tau_{i,j}>` against `1/L`.
    pub bullet: Vec<Vec<Comparison>>,
    /// `[i][j]`: `<eta_{i,j}>` against the gap-sum formula.
    pub boxes: Vec<Vec<Comparison>>,
    /// `[j]`: total occupation of column `j` against 1.
    pub column_occupancy: Vec<Comparison>,
}

impl DensityReport {
    pub fn all_equal(&self) -> bool {
        self.rows().iter().all(|r| r.equal)
    }

    pub fn rows(&self) -> Vec<ObservableRow> {
        let mut out = Vec::new();
        for (i, row) in self.bullet.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                push_row(&mut out, "density_bullet", Some(i), Some(j), c);
            }
        }
        for (i, row) in self.boxes.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                push_row(&mut out, "density_box", Some(i), Some(j), c);
            }
        }
        for (j, c) in self.column_occupancy.iter().enumerate() {
            push_row(&mut out, "column_occupancy", None, Some(j), c);
        }
        out
    }
}

/// Every current family. Column index `j` names the boundary between
/// columns `j` and `j + 1`.
#[derive(Clone, Debug)]
pub struct CurrentReport {
    pub l: usize,
    pub n: usize,
    /// `[i][j]`, oracle from the displayed `<tau eta>` sum.
    pub bullet_edge: Vec<Vec<Comparison>>,
    /// `[i][j]`, oracle from transition displacement records.
    pub bullet_edge_crossings: Vec<Vec<Comparison>>,
    /// `[i]`, sum over edges of the row.
    pub bullet_total: Vec<Comparison>,
    /// `[j]`, box crossings summed over rows, relabeled box included.
    pub box_h_column: Vec<Comparison>,
    /// `[i]`, rate of relabeling moves initiated by row `i` going forward.
    pub box_v_up: Vec<Comparison>,
    /// `[i]`, rate of relabeling moves initiated by row `i` going backward.
    pub box_v_down: Vec<Comparison>,
    /// `[i]`, `up(i) - down(i-1)`: net flow across the boundary between rows
    /// `i - 1` and `i`, in the direction of the forward relabeling move.
    pub box_v_net: Vec<Comparison>,
    /// `[i]`, `up(i) - down(i)`, the same-row pairing; equal to `box_v_net`
    /// because both one-sided currents are row independent.
    pub box_v_net_same_row: Vec<Comparison>,
    /// `[i][j]`, crossings by boxes that keep their row.
    pub box_h_row: Vec<Vec<Comparison>>,
    /// `[i][j]`, only the swap contributions; these cancel.
    pub box_h_row_swaps: Vec<Vec<Comparison>>,
    /// `[j]`, `sum_i J_bullet(i,j) + J_box_h(j)` against 0.
    pub flux_balance: Vec<Comparison>,
}

impl CurrentReport {
    pub fn all_equal(&self) -> bool {
        self.rows().iter().all(|r| r.equal)
    }

    pub fn rows(&self) -> Vec<ObservableRow> {
        let mut out = Vec::new();
        let grids: [(&str, &Vec<Vec<Comparison>>); 4] = [
            ("J_bullet_edge", &self.bullet_edge),
            ("J_bullet_edge_crossings", &self.bullet_edge_crossings),
            ("J_box_h_row", &self.box_h_row),
            ("J_box_h_row_swaps", &self.box_h_row_swaps),
        ];
        for (name, grid) in grids {
            for (i, row) in grid.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    push_row(&mut out, name, Some(i), Some(j), c);
                }
            }
        }
        let per_row: [(&str, &Vec<Comparison>); 5] = [
            ("J_bullet_total", &self.bullet_total),
            ("J_box_v_up", &self.box_v_up),
            ("J_box_v_down", &self.box_v_down),
            ("J_box_v_net", &self.box_v_net),
            ("J_box_v_net_same_row", &self.box_v_net_same_row),
        ];
        for (name, v) in per_row {
            for (i, c) in v.iter().enumerate() {
                push_row(&mut out, name, Some(i), None, c);
            }
        }
        for (j, c) in self.box_h_column.iter().enumerate() {
            push_row(&mut out, "J_box_h_column", None, Some(j), c);
        }
        for (j, c) in self.flux_balance.iter().enumerate() {
            push_row(&mut out, "flux_balance", None, Some(j), c);
        }
        out
    }
}

/// Closed-form expressions, all as rational functions of the rates.
#[derive(Clone, Debug)]
pub struct ClosedForms {
    l: usize,
    n: usize,
    z: PartitionTable,
}

impl ClosedForms {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        check_sizes(l, n)?;
        Ok(ClosedForms { l, n, z: PartitionTable::new(l, n)? })
    }

    fn ratio(&self, num: Polynomial, den: Polynomial) -> RationalFunction {
        RationalFunction::new(num, den).expect("partition functions are nonzero for L >= n")
    }

    fn int(&self, c: usize) -> BigRational {
        BigRational::from_integer(c.into())
    }

    fn lz(&self, m: usize) -> Polynomial {
        self.z.z(m).scale(&self.int(m))
    }

    fn delta(&self) -> Polynomial {
        &prod_p(self.n) - &prod_q(self.n)
    }

    pub fn z(&self, m: usize) -> &Polynomial {
        self.z.z(m)
    }

    /// Numerator over `L Z_{L,n}` of the row-`i` box density at size `m`:
    /// `sum_k w(i,k) sum_{j=1}^{m-n} W(k)^{j-1} Z_{m-j,n}`, obtained for row 0
    /// and moved to row `i` by the index shift.
    pub fn density_numerator(&self, m: usize, i: usize) -> Polynomial {
        let n = self.n;
        let mut out = Polynomial::zero(n);
        if m <= n {
            return out;
        }
        for k in 0..n {
            let wk = w_box(k, n).expect("label in range");
            let mut inner = Polynomial::zero(n);
            let mut power = Polynomial::one(n);
            for j in 1..=m - n {
                inner += &(&power * self.z.z(m - j));
                power = &power * &wk;
            }
            let b = box_weight(0, k, n).expect("label in range");
            out += &inner.mul_monomial(&b);
        }
        out.shift(i)
    }

    /// `<eta_{i,j}>` at size `m <= L`, any column.
    pub fn density_box_at(&self, m: usize, i: usize) -> RationalFunction {
        if m <= self.n {
            return RationalFunction::zero(self.n);
        }
        self.ratio(self.density_numerator(m, i), self.lz(m))
    }

    pub fn density_box(&self, i: usize) -> RationalFunction {
        self.density_box_at(self.l, i)
    }

    pub fn density_bullet(&self) -> RationalFunction {
        self.ratio(Polynomial::one(self.n), Polynomial::integer(self.n, self.l as i64))
    }

    /// `(prod p - prod q) Z_{L-1,n} / (L Z_{L,n})`.
    pub fn bullet_edge(&self) -> RationalFunction {
        self.ratio(&self.delta() * self.z_below(), self.lz(self.l))
    }

    /// `(prod p - prod q) Z_{L-1,n} / Z_{L,n}`.
    pub fn bullet_total(&self) -> RationalFunction {
        self.ratio(&self.delta() * self.z_below(), self.z.z(self.l).clone())
    }

    /// `-n (prod p - prod q) Z_{L-1,n} / (L Z_{L,n})`.
    pub fn box_h_column(&self) -> RationalFunction {
        self.bullet_edge().scale(&-self.int(self.n))
    }

    /// `prod p Z_{L-1,n} / Z_{L,n}`.
    pub fn box_v_up(&self) -> RationalFunction {
        self.ratio(&prod_p(self.n) * self.z_below(), self.z.z(self.l).clone())
    }

    /// `prod q Z_{L-1,n} / Z_{L,n}`.
    pub fn box_v_down(&self) -> RationalFunction {
        self.ratio(&prod_q(self.n) * self.z_below(), self.z.z(self.l).clone())
    }

    /// `(prod p - prod q) <eta_{i,1}>_{L-1,n} (L-1) Z_{L-1,n} / (L Z_{L,n})`,
    /// with the density taken at size `L - 1`.
    pub fn box_h_row(&self, i: usize) -> RationalFunction {
        if self.l == self.n {
            return RationalFunction::zero(self.n);
        }
        let m = self.l - 1;
        let rest = self.ratio(&self.delta() * &self.lz(m), self.lz(self.l));
        self.density_box_at(m, i).mul(&rest)
    }

    fn z_below(&self) -> &Polynomial {
        self.z.z(self.l - 1)
    }
}

/// Expectation values over the exact stationary law, in either mode.
enum Values {
    Symbolic { num: Vec<Polynomial>, den: Polynomial },
    Numeric { val: Vec<BigRational>, rates: RatePoint },
}

struct Engine {
    lay: Layout,
    values: Values,
    closed: ClosedForms,
}

impl Engine {
    fn new(l: usize, n: usize, mode: &GeneratorMode, cap: u64) -> Result<Self> {
        let closed = ClosedForms::new(l, n)?;
        let lay = Layout { l, n };
        let states = enumerate_full(l, n, cap)?;
        let values = match mode {
            GeneratorMode::Symbolic => {
                let (num, den) = symbolic_slots(&lay, &states);
                Values::Symbolic { num, den }
            }
            GeneratorMode::Numeric(rates) => {
                if rates.n() != n {
                    return Err(Error::domain(format!("rates are for n = {}, expected {n}", rates.n())));
                }
                let gen = build_numeric_on(states, rates)?;
                let table = exact_stationary(&gen, rates)?;
                let probs = table.probabilities().expect("numeric table");
                let val = numeric_slots(&lay, gen.states(), probs, rates);
                Values::Numeric { val, rates: rates.clone() }
            }
        };
        Ok(Engine { lay, values, closed })
    }

    fn combo(&self, terms: &[(Slot, i64)]) -> Exact {
        match &self.values {
            Values::Symbolic { num, den } => {
                let mut acc = Polynomial::zero(self.lay.n);
                for &(s, c) in terms {
                    acc += &num[self.lay.index(s)].scale(&BigRational::from_integer(c.into()));
                }
                Exact::Symbolic(RationalFunction::new(acc, den.clone()).expect("weights sum is nonzero"))
            }
            Values::Numeric { val, .. } => {
                let mut acc = BigRational::zero();
                for &(s, c) in terms {
                    acc += &val[self.lay.index(s)] * BigRational::from_integer(c.into());
                }
                Exact::Numeric(acc)
            }
        }
    }

    fn slot(&self, s: Slot) -> Exact {
        self.combo(&[(s, 1)])
    }

    fn closed(&self, f: RationalFunction) -> Result<Exact> {
        match &self.values {
            Values::Symbolic { .. } => Ok(Exact::Symbolic(f)),
            Values::Numeric { rates, .. } => f.evaluate(rates).map(Exact::Numeric),
        }
    }

    fn constant(&self, c: BigRational) -> Result<Exact> {
        self.closed(RationalFunction::from_polynomial(Polynomial::constant(self.lay.n, c)))
    }

    fn densities(&self) -> Result<DensityReport> {
        let Layout { l, n } = self.lay;
        let tau = self.closed(self.closed.density_bullet())?;
        let mut bullet = Vec::with_capacity(n);
        let mut boxes = Vec::with_capacity(n);
        for i in 0..n {
            let eta = self.closed(self.closed.density_box(i))?;
            bullet.push((0..l).map(|j| Comparison::new(tau.clone(), self.slot(Slot::Tau(i, j)))).collect());
            boxes.push((0..l).map(|j| Comparison::new(eta.clone(), self.slot(Slot::Eta(i, j)))).collect());
        }
        let one = self.constant(BigRational::one())?;
        let column_occupancy = (0..l)
            .map(|j| {
                let terms: Vec<(Slot, i64)> =
                    (0..n).flat_map(|i| [(Slot::Eta(i, j), 1), (Slot::Tau(i, j), 1)]).collect();
                Comparison::new(one.clone(), self.combo(&terms))
            })
            .collect();
        Ok(DensityReport { l, n, bullet, boxes, column_occupancy })
    }

    fn currents(&self) -> Result<CurrentReport> {
        let Layout { l, n } = self.lay;
        let c = &self.closed;
        let edge = self.closed(c.bullet_edge())?;
        let total = self.closed(c.bullet_total())?;
        let column = self.closed(c.box_h_column())?;
        let up = self.closed(c.box_v_up())?;
        let down = self.closed(c.box_v_down())?;
        let zero = self.constant(BigRational::zero())?;
        let grid = |f: &dyn Fn(usize, usize) -> Slot, closed: &dyn Fn(usize) -> Exact| -> Vec<Vec<Comparison>> {
            (0..n).map(|i| (0..l).map(|b| Comparison::new(closed(i), self.slot(f(i, b)))).collect()).collect()
        };
        let box_row_closed: Vec<Exact> = (0..n).map(|i| self.closed(c.box_h_row(i))).collect::<Result<_>>()?;
        let prev = |i: usize| (i + n - 1) % n;
        Ok(CurrentReport {
            l,
            n,
            bullet_edge: grid(&Slot::BulletEdge, &|_| edge.clone()),
            bullet_edge_crossings: grid(&Slot::BulletEdgeCrossings, &|_| edge.clone()),
            bullet_total: (0..n)
                .map(|i| {
                    let terms: Vec<_> = (0..l).map(|b| (Slot::BulletEdge(i, b), 1)).collect();
                    Comparison::new(total.clone(), self.combo(&terms))
                })
                .collect(),
            box_h_column: (0..l).map(|b| Comparison::new(column.clone(), self.slot(Slot::BoxColumn(b)))).collect(),
            box_v_up: (0..n).map(|i| Comparison::new(up.clone(), self.slot(Slot::VerticalUp(i)))).collect(),
            box_v_down: (0..n).map(|i| Comparison::new(down.clone(), self.slot(Slot::VerticalDown(i)))).collect(),
            box_v_net: (0..n)
                .map(|i| {
                    let o = self.combo(&[(Slot::VerticalUp(i), 1), (Slot::VerticalDown(prev(i)), -1)]);
                    Comparison::new(total.clone(), o)
                })
                .collect(),
            box_v_net_same_row: (0..n)
                .map(|i| {
                    let o = self.combo(&[(Slot::VerticalUp(i), 1), (Slot::VerticalDown(i), -1)]);
                    Comparison::new(total.clone(), o)
                })
                .collect(),
            box_h_row: grid(&Slot::BoxRow, &|i| box_row_closed[i].clone()),
            box_h_row_swaps: grid(&Slot::BoxRowSwaps, &|_| zero.clone()),
            flux_balance: (0..l)
                .map(|b| {
                    let mut terms: Vec<_> = (0..n).map(|i| (Slot::BulletEdge(i, b), 1)).collect();
                    terms.push((Slot::BoxColumn(b), 1));
                    Comparison::new(zero.clone(), self.combo(&terms))
                })
                .collect(),
        })
    }
}

/// Densities and currents from one pass over the stationary law.
#[derive(Clone, Debug)]
pub struct ObservablesReport {
    pub l: usize,
    pub n: usize,
    pub mode: String,
    pub densities: DensityReport,
    pub currents: CurrentReport,
}

impl ObservablesReport {
    pub fn all_equal(&self) -> bool {
        self.densities.all_equal() && self.currents.all_equal()
    }

    pub fn rows(&self) -> Vec<ObservableRow> {
        let mut rows = self.densities.rows();
        rows.extend(self.currents.rows());
        rows
    }
}

fn mode_name(mode: &GeneratorMode) -> String {
    match mode {
        GeneratorMode::Symbolic => "symbolic".into(),
        GeneratorMode::Numeric(_) => "numeric".into(),
    }
}

pub fn observables(l: usize, n: usize, mode: &GeneratorMode, cap: u64) -> Result<ObservablesReport> {
    let e = Engine::new(l, n, mode, cap)?;
    Ok(ObservablesReport { l, n, mode: mode_name(mode), densities: e.densities()?, currents: e.currents()? })
}

pub fn densities(l: usize, n: usize, mode: &GeneratorMode, cap: u64) -> Result<DensityReport> {
    Engine::new(l, n, mode, cap)?.densities()
}

pub fn currents_exact(l: usize, n: usize, mode: &GeneratorMode, cap: u64) -> Result<CurrentReport> {
    Engine::new(l, n, mode, cap)?.currents()
}

/// Both sides of the vertical-horizontal current identity, computed from
/// expectations over the symbolic weights with the common denominator
/// `L Z_{L,n}`.
#[derive(Clone, Debug, Serialize)]
pub struct ScottRussellRow {
    /// One-based row.
    pub row: usize,
    /// `sum_b J_bullet(i, b)` numerator.
    pub horizontal: Polynomial,
    /// `up(i) - down(i-1)` numerator.
    pub vertical: Polynomial,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScottRussellCertificate {
    pub l: usize,
    pub n: usize,
    pub denominator: Polynomial,
    pub rows: Vec<ScottRussellRow>,
}

impl ScottRussellCertificate {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }
}

pub fn scott_russell_check(l: usize, n: usize, cap: u64) -> Result<ScottRussellCertificate> {
    check_sizes(l, n)?;
    let lay = Layout { l, n };
    let states = enumerate_full(l, n, cap)?;
    let (num, den) = symbolic_slots(&lay, &states);
    let rows = (0..n)
        .map(|i| {
            let mut horizontal = Polynomial::zero(n);
            for b in 0..l {
                horizontal += &num[lay.index(Slot::BulletEdge(i, b))];
            }
            let vertical = &num[lay.index(Slot::VerticalUp(i))] - &num[lay.index(Slot::VerticalDown((i + n - 1) % n))];
            let equal = horizontal == vertical;
            ScottRussellRow { row: i + 1, horizontal, vertical, equal }
        })
        .collect();
    Ok(ScottRussellCertificate { l, n, denominator: den, rows })
}

/// The bullet edge current with every `p_i = p`, `q_i = q`, in the
/// one-species ring, next to `(p - q)(L - n) / (L (L - 1))`.
pub fn identical_rates_current(l: usize, n: usize) -> Result<(RationalFunction, RationalFunction)> {
    if l < 2 {
        return Err(Error::domain("identical-rates current needs L >= 2"));
    }
    use crate::symbolic::Var;
    let j = ClosedForms::new(l, n)?.bullet_edge().substitute(1, |v| {
        Some(match v {
            Var::P(_) => Var::P(0),
            Var::Q(_) => Var::Q(0),
        })
    })?;
    let num = Polynomial::parse(1, "p1 - q1")?.scale(&BigRational::from_integer((l - n).into()));
    let want = RationalFunction::new(num, Polynomial::integer(1, (l * (l - 1)) as i64))?;
    Ok((j, want))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Polynomial {
        Polynomial::parse(2, s).unwrap()
    }

    #[test]
    fn worked_numerators_four_two() {
        let r = observables(4, 2, &GeneratorMode::Symbolic, u64::MAX).unwrap();
        assert!(r.all_equal(), "{:#?}", r.rows().iter().filter(|x| !x.equal).collect::<Vec<_>>());
        let z = super::super::partition_function(4, 2).unwrap();
        let j = r.currents.bullet_edge[0][0].oracle.as_function().unwrap();
        assert_eq!(*j.denominator(), z.scale(&BigRational::from_integer(4.into())));
        assert_eq!(*j.numerator(), &poly("p1 p2 - q1 q2") * &poly("p1 + p2 + q1 + q2"));
        let eta = r.densities.boxes[0][3].oracle.as_function().unwrap();
        assert_eq!(*eta.numerator(), poly("2 p2^2 + 2 p1 q2 + 2 p2 q1 + 2 p2 q2 + 2 q2^2 + p1 p2 + q1 q2"));
    }

    #[test]
    fn symbolic_small_sizes() {
        for l in 1..=5 {
            for n in 1..=l {
                let r = observables(l, n, &GeneratorMode::Symbolic, u64::MAX).unwrap();
                let bad: Vec<_> = r.rows().into_iter().filter(|x| !x.equal).collect();
                assert!(bad.is_empty(), "L={l} n={n}: {bad:#?}");
            }
        }
    }

    #[test]
    fn numeric_point() {
        let rates = RatePoint::parse("1,2;3,5").unwrap();
        let r = observables(4, 2, &GeneratorMode::Numeric(rates), u64::MAX).unwrap();
        assert!(r.all_equal());
    }

    #[test]
    fn scott_russell_small() {
        for (l, n) in [(4, 2), (5, 2), (3, 3)] {
            assert!(scott_russell_check(l, n, u64::MAX).unwrap().holds());
        }
    }

    #[test]
    fn identical_rates() {
        for l in 2..=7 {
            for n in 1..=l {
                let (got, want) = identical_rates_current(l, n).unwrap();
                assert_eq!(got, want, "L={l} n={n}");
            }
        }
    }
}
