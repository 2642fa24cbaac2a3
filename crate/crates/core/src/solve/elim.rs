//! Sparse Gaussian elimination over the rationals.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// `row += factor * other`, dropping cancelled entries.
pub fn axpy(row: &mut SparseRow, factor: &Rational, other: &SparseRow) {
    for (&c, v) in other {
        let e = row.entry(c).or_insert_with(Rational::zero);
        *e += factor * v;
        if e.is_zero() {
            row.remove(&c);
        }
    }
}

pub fn dot(row: &SparseRow, x: &[Rational]) -> Rational {
    row.iter().map(|(&c, v)| v * &x[c]).sum()
}

/// Row echelon form built incrementally; each stored row has pivot coefficient one and
/// no entries in the pivot columns of earlier rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    priority: Vec<u32>,
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon::with_priority(ncols, vec![0; ncols])
    }

    /// Pivots are chosen among the columns of least priority value, then least index.
    pub fn with_priority(ncols: usize, priority: Vec<u32>) -> Self {
        assert_eq!(priority.len(), ncols);
        Echelon {
            ncols,
            priority,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut pending: BTreeSet<usize> = row.keys().filter_map(|c| self.pivot_row.get(c).copied()).collect();
        while let Some(r) = pending.pop_first() {
            let p = self.pivots[r];
            let Some(f) = row.get(&p).cloned() else { continue };
            let before: BTreeSet<usize> = self.rows[r].keys().copied().collect();
            axpy(&mut row, &-f, &self.rows[r]);
            for c in before {
                if let Some(&r2) = self.pivot_row.get(&c) {
                    if r2 > r && row.contains_key(&c) {
                        pending.insert(r2);
                    }
                }
            }
        }
        row
    }

    /// Adds a row; returns false if it was dependent on the stored rows.
    pub fn push(&mut self, row: SparseRow) -> bool {
        let row = self.reduce(row);
        let Some(&p) = row.keys().min_by_key(|&&c| (self.priority[c], c)) else {
            return false;
        };
        let inv = Rational::one() / &row[&p];
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivot_row.insert(p, self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        true
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivot_row.contains_key(c)).collect()
    }

    /// Fully reduced rows, keyed by pivot column.
    pub fn rref(&self) -> BTreeMap<usize, SparseRow> {
        let mut rows = self.rows.clone();
        for r in (0..rows.len()).rev() {
            let row = core::mem::take(&mut rows[r]);
            let reduced = self.reduce_with(&rows, r, row);
            rows[r] = reduced;
        }
        self.pivots.iter().copied().zip(rows).collect()
    }

    fn reduce_with(&self, rows: &[SparseRow], own: usize, mut row: SparseRow) -> SparseRow {
        // later rows are already fully reduced, so a single pass suffices
        let cols: Vec<usize> = row.keys().copied().collect();
        for c in cols {
            if let Some(&r) = self.pivot_row.get(&c) {
                if r > own {
                    if let Some(f) = row.get(&c).cloned() {
                        axpy(&mut row, &-f, &rows[r]);
                    }
                }
            }
        }
        row
    }

    /// `x = M t` with `t` ranging over the free columns: every solution of the homogeneous system.
    pub fn kernel(&self) -> Parametrization {
        let free = self.free_columns();
        let index: BTreeMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rows: Vec<SparseRow> = vec![SparseRow::new(); self.ncols];
        for (&c, i) in &index {
            rows[c].insert(*i, Rational::one());
        }
        for (p, row) in self.rref() {
            rows[p] = row
                .iter()
                .filter(|(&c, _)| c != p)
                .map(|(c, v)| (index[c], -v))
                .collect();
        }
        Parametrization { free, rows }
    }
}

/// Linear parametrization `x_i = Σ_j rows[i][j] · t_j`, where `t_j` is the value of column `free[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    pub free: Vec<usize>,
    pub rows: Vec<SparseRow>,
}

impl Parametrization {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn eval(&self, t: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|r| dot(r, t)).collect()
    }

    /// Dense `M` with one row per variable.
    pub fn dense(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = vec![Rational::zero(); self.dim()];
                for (&c, x) in r {
                    v[c] = x.clone();
                }
                v
            })
            .collect()
    }
}

/// Solves `A x = b` for sparse rows of `A`; returns one solution or `None`.
pub fn solve(ncols: usize, rows: &[SparseRow], b: &[Rational]) -> Option<Vec<Rational>> {
    let mut e = Echelon::with_priority(ncols + 1, (0..=ncols).map(|c| u32::from(c == ncols)).collect());
    for (r, rhs) in rows.iter().zip(b) {
        let mut row = r.clone();
        if !rhs.is_zero() {
            row.insert(ncols, -rhs);
        }
        e.push(row);
    }
    if e.pivot_columns().contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (p, row) in e.rref() {
        if let Some(v) = row.get(&ncols) {
            x[p] = -v;
        }
    }
    Some(x)
}
