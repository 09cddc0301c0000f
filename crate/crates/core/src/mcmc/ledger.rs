use std::io::Write;

use serde::Serialize;

use crate::dynamics::{Displacement, MoveKind};
use crate::model::Symbol;
use crate::Result;

/// Signed crossing counts accumulated from displacement records.
///
/// Boundary `b` separates columns `b` and `b + 1 (mod L)`; a rightward
/// crossing counts `+1`. Row-indexed arrays are laid out `[row * L + b]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossingLedger {
    pub l: usize,
    pub n: usize,
    /// Bullet of row `i` across boundary `b`.
    pub bullet_edge: Vec<i64>,
    /// All boxes across boundary `b`, including the relabeled box.
    pub box_column: Vec<i64>,
    /// Boxes that keep row `i` across boundary `b`.
    pub box_row_edge: Vec<i64>,
    /// Forward relabeling moves initiated by row `i`.
    pub box_row_up: Vec<u64>,
    /// Backward relabeling moves initiated by row `i`.
    pub box_row_down: Vec<u64>,
}

impl CrossingLedger {
    pub fn new(l: usize, n: usize) -> Self {
        CrossingLedger {
            l,
            n,
            bullet_edge: vec![0; n * l],
            box_column: vec![0; l],
            box_row_edge: vec![0; n * l],
            box_row_up: vec![0; n],
            box_row_down: vec![0; n],
        }
    }

    pub fn record(&mut self, d: &Displacement) {
        let l = self.l;
        d.for_each_crossing(l, |b, sign| match d.before {
            Symbol::Bullet(i) => self.bullet_edge[i * l + b] += sign,
            Symbol::Box(i) => {
                self.box_column[b] += sign;
                if !d.vertical {
                    self.box_row_edge[i * l + b] += sign;
                }
            }
        });
    }

    pub fn record_event(&mut self, kind: MoveKind, row: usize) {
        match kind {
            MoveKind::F2 => self.box_row_up[row] += 1,
            MoveKind::B2 => self.box_row_down[row] += 1,
            MoveKind::F1 | MoveKind::B1 => {}
        }
    }

    pub fn bullet(&self, i: usize, b: usize) -> i64 {
        self.bullet_edge[i * self.l + b]
    }

    pub fn box_row(&self, i: usize, b: usize) -> i64 {
        self.box_row_edge[i * self.l + b]
    }

    pub fn is_empty(&self) -> bool {
        self.bullet_edge.iter().chain(&self.box_column).chain(&self.box_row_edge).all(|&x| x == 0)
            && self.box_row_up.iter().chain(&self.box_row_down).all(|&x| x == 0)
    }

    pub fn add(&mut self, other: &CrossingLedger) {
        let add_i = |a: &mut [i64], b: &[i64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        let add_u = |a: &mut [u64], b: &[u64]| a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        add_i(&mut self.bullet_edge, &other.bullet_edge);
        add_i(&mut self.box_column, &other.box_column);
        add_i(&mut self.box_row_edge, &other.box_row_edge);
        add_u(&mut self.box_row_up, &other.box_row_up);
        add_u(&mut self.box_row_down, &other.box_row_down);
    }

    /// CSV with header `kind,row,boundary,count`; rows and boundaries are
    /// one-based, empty when not applicable.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["kind", "row", "boundary", "count"])?;
        let (l, n) = (self.l, self.n);
        let s = |x: usize| (x + 1).to_string();
        for i in 0..n {
            for b in 0..l {
                w.write_record(["bullet_edge", &s(i), &s(b), &self.bullet(i, b).to_string()])?;
            }
        }
        for b in 0..l {
            w.write_record(["box_column", "", &s(b), &self.box_column[b].to_string()])?;
        }
        for i in 0..n {
            for b in 0..l {
                w.write_record(["box_row_edge", &s(i), &s(b), &self.box_row(i, b).to_string()])?;
            }
        }
        for i in 0..n {
            w.write_record(["box_row_up", &s(i), "", &self.box_row_up[i].to_string()])?;
            w.write_record(["box_row_down", &s(i), "", &self.box_row_down[i].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}
