use std::fmt;

use serde::Serialize;

use super::validate::{cyclic_descents, Violation};
use super::{ColoredWord, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CellState {
    Empty,
    Bullet,
    Box,
}

/// The `n x L` torus view: rows are species labels, columns are ring sites.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusConfig {
    n_rows: usize,
    n_cols: usize,
    cells: Vec<CellState>,
}

impl TorusConfig {
    /// Builds a grid from row-major cells and validates it.
    pub fn new(n_rows: usize, n_cols: usize, cells: Vec<CellState>) -> Result<Self> {
        let t = TorusConfig::raw(n_rows, n_cols, cells);
        let v = t.violations();
        if v.is_empty() {
            Ok(t)
        } else {
            Err(Error::Validation(v))
        }
    }

    /// Unvalidated constructor.
    pub fn raw(n_rows: usize, n_cols: usize, mut cells: Vec<CellState>) -> Self {
        cells.resize(n_rows * n_cols, CellState::Empty);
        TorusConfig { n_rows, n_cols, cells }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn cell(&self, row: usize, col: usize) -> CellState {
        self.cells[row * self.n_cols + col]
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n_rows == 0 || self.n_cols < self.n_rows {
            out.push(Violation::GridShape { rows: self.n_rows, cols: self.n_cols, n: self.n_rows });
            return out;
        }
        let mut bullet_col = vec![None; self.n_rows];
        for (row, slot) in bullet_col.iter_mut().enumerate() {
            let cols: Vec<usize> = (0..self.n_cols).filter(|&c| self.cell(row, c) == CellState::Bullet).collect();
            if cols.len() == 1 {
                *slot = Some(cols[0]);
            } else {
                out.push(Violation::RowBulletCount { row, count: cols.len() });
            }
        }
        for col in 0..self.n_cols {
            let count = (0..self.n_rows).filter(|&r| self.cell(r, col) != CellState::Empty).count();
            if count != 1 {
                out.push(Violation::ColumnOccupancy { col, count });
            }
        }
        if out.is_empty() {
            let seq: Vec<usize> = bullet_col.into_iter().flatten().collect();
            if cyclic_descents(&seq) > 1 {
                out.push(Violation::NotCyclicallyIncreasing { sequence: seq });
            }
        }
        out
    }

    /// Projects the grid onto a colored word: column `j` becomes the letter of
    /// its unique particle, labelled by the particle's row.
    pub fn to_word(&self) -> Result<ColoredWord> {
        let v = self.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        let letters = (0..self.n_cols)
            .map(|col| {
                let (row, state) = (0..self.n_rows)
                    .map(|r| (r, self.cell(r, col)))
                    .find(|(_, s)| *s != CellState::Empty)
                    .expect("validated column occupancy");
                match state {
                    CellState::Bullet => Symbol::Bullet(row),
                    _ => Symbol::Box(row),
                }
            })
            .collect();
        ColoredWord::new(self.n_rows, letters)
    }

    /// Lifts a word onto the torus.
    pub fn from_word(w: &ColoredWord) -> Result<Self> {
        let v = w.violations();
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        let (n, l) = (w.n(), w.len());
        let mut cells = vec![CellState::Empty; n * l];
        for (j, s) in w.letters().iter().enumerate() {
            cells[s.label() * l + j] = match s {
                Symbol::Bullet(_) => CellState::Bullet,
                Symbol::Box(_) => CellState::Box,
            };
        }
        Ok(TorusConfig { n_rows: n, n_cols: l, cells })
    }
}

impl fmt::Display for TorusConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..self.n_rows {
            if row > 0 {
                writeln!(f)?;
            }
            for col in 0..self.n_cols {
                let c = match self.cell(row, col) {
                    CellState::Empty => '.',
                    CellState::Bullet => 'B',
                    CellState::Box => 'b',
                };
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example_bullets() {
        let w: ColoredWord = "B1 b3 b3 b4 B2 b2 B3 b3 B4 b1".parse().unwrap();
        let t = TorusConfig::from_word(&w).unwrap();
        let bullets: Vec<(usize, usize)> = (0..4)
            .flat_map(|r| (0..10).map(move |c| (r, c)))
            .filter(|&(r, c)| t.cell(r, c) == CellState::Bullet)
            .map(|(r, c)| (r + 1, c + 1))
            .collect();
        assert_eq!(bullets, vec![(1, 1), (2, 5), (3, 7), (4, 9)]);
        assert_eq!(t.to_word().unwrap(), w);
    }

    #[test]
    fn single_row() {
        let w: ColoredWord = "B1 b1".parse().unwrap();
        let t = TorusConfig::from_word(&w).unwrap();
        assert_eq!(t.to_string(), "Bb");
        assert_eq!(t.cell(0, 0), CellState::Bullet);
        assert_eq!(t.cell(0, 1), CellState::Box);
    }

    #[test]
    fn column_with_two_particles() {
        use CellState::*;
        let t = TorusConfig::raw(2, 2, vec![Bullet, Empty, Box, Bullet]);
        let v = t.violations();
        assert!(v.iter().any(|x| matches!(x, Violation::ColumnOccupancy { col: 0, count: 2 })));
        assert!(!v.iter().any(|x| matches!(x, Violation::ColumnOccupancy { col: 1, .. })));
    }
}
