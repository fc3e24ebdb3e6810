//! Dense tableau simplex with Bland's rule and a two-phase start.
//!
//! Variables are shifted or split so that every tableau column is
//! nonnegative; finite upper bounds become explicit rows.

use std::time::Instant;

use crate::model::{LinearRow, RowSense};

const INFEASIBILITY_TOL: f64 = 1e-7;
const REDUCED_COST_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200_000;

/// `min cost·x` subject to rows and `lower <= x <= upper`.
#[derive(Debug, Clone)]
pub(crate) struct LinearProgram {
    pub cost: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub rows: Vec<LinearRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
    TimeLimit,
    Failed,
}

#[derive(Debug, Clone, Copy)]
enum ColumnMap {
    Shift { col: usize, lower: f64 },
    Flip { col: usize, upper: f64 },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// Row-major, `width = cols + 1`, last entry of each row is the rhs.
    cells: Vec<f64>,
    rows: usize,
    width: usize,
    basis: Vec<usize>,
    /// Reduced costs; the last entry holds minus the objective value.
    reduced: Vec<f64>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let w = self.width;
        let p = self.cells[r * w + e];
        for v in &mut self.cells[r * w..(r + 1) * w] {
            *v /= p;
        }
        let pivot_row: Vec<f64> = self.cells[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let factor = self.cells[i * w + e];
            if factor == 0.0 {
                continue;
            }
            for (cell, pv) in self.cells[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                *cell -= factor * pv;
                if cell.abs() < ZERO_TOL {
                    *cell = 0.0;
                }
            }
            self.cells[i * w + e] = 0.0;
        }
        let factor = self.reduced[e];
        if factor != 0.0 {
            for (cell, pv) in self.reduced.iter_mut().zip(&pivot_row) {
                *cell -= factor * pv;
                if cell.abs() < ZERO_TOL {
                    *cell = 0.0;
                }
            }
            self.reduced[e] = 0.0;
        }
        self.basis[r] = e;
    }

    fn set_costs(&mut self, costs: &[f64]) {
        let w = self.width;
        self.reduced = costs.to_vec();
        self.reduced.push(0.0);
        for i in 0..self.rows {
            let cb = costs[self.basis[i]];
            if cb == 0.0 {
                continue;
            }
            for j in 0..w {
                self.reduced[j] -= cb * self.cells[i * w + j];
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width;
        self.cells.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }

    /// Runs Bland-rule pivots over columns `< allowed`.
    fn optimize(&mut self, allowed: usize, deadline: Option<Instant>, budget: &mut usize) -> Step {
        loop {
            if *budget == 0 {
                return Step::Failed;
            }
            *budget -= 1;
            if budget.is_multiple_of(64) && deadline.is_some_and(|d| Instant::now() >= d) {
                return Step::TimeLimit;
            }
            let Some(e) = (0..allowed).find(|&j| self.reduced[j] < -REDUCED_COST_TOL) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.at(i, e);
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        let tie = (ratio - best).abs() <= ZERO_TOL * (1.0 + best.abs());
                        if ratio < best && !tie || tie && self.basis[i] < self.basis[r] {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Step::Unbounded,
            }
        }
    }
}

enum Step {
    Optimal,
    Unbounded,
    TimeLimit,
    Failed,
}

pub(crate) fn solve(lp: &LinearProgram, deadline: Option<Instant>) -> LpOutcome {
    let n = lp.cost.len();
    let mut maps = Vec::with_capacity(n);
    let mut cols = 0;
    for j in 0..n {
        let (l, u) = (lp.lower[j], lp.upper[j]);
        if l > u {
            return LpOutcome::Infeasible;
        }
        let map = if l.is_finite() {
            ColumnMap::Shift {
                col: cols,
                lower: l,
            }
        } else if u.is_finite() {
            ColumnMap::Flip {
                col: cols,
                upper: u,
            }
        } else {
            cols += 1;
            ColumnMap::Split {
                pos: cols - 1,
                neg: cols,
            }
        };
        cols += 1;
        maps.push(map);
    }

    // Dense rows over structural columns, in `<=`/`=`/`>=` form.
    let mut dense: Vec<(Vec<f64>, RowSense, f64)> = Vec::new();
    for row in &lp.rows {
        let mut coeffs = vec![0.0; cols];
        let mut rhs = row.rhs;
        for (&j, &a) in &row.coefficients {
            match maps[j] {
                ColumnMap::Shift { col, lower } => {
                    coeffs[col] += a;
                    rhs -= a * lower;
                }
                ColumnMap::Flip { col, upper } => {
                    coeffs[col] -= a;
                    rhs -= a * upper;
                }
                ColumnMap::Split { pos, neg } => {
                    coeffs[pos] += a;
                    coeffs[neg] -= a;
                }
            }
        }
        dense.push((coeffs, row.sense, rhs));
    }
    for (j, map) in maps.iter().enumerate() {
        if let ColumnMap::Shift { col, lower } = *map {
            if lp.upper[j].is_finite() {
                let mut coeffs = vec![0.0; cols];
                coeffs[col] = 1.0;
                dense.push((coeffs, RowSense::Le, lp.upper[j] - lower));
            }
        }
    }
    for (coeffs, sense, rhs) in &mut dense {
        if *rhs < 0.0 {
            coeffs.iter_mut().for_each(|a| *a = -*a);
            *rhs = -*rhs;
            *sense = match *sense {
                RowSense::Le => RowSense::Ge,
                RowSense::Ge => RowSense::Le,
                RowSense::Eq => RowSense::Eq,
            };
        }
    }

    let m = dense.len();
    let slacks = dense.iter().filter(|r| r.1 != RowSense::Eq).count();
    let artificials = dense.iter().filter(|r| r.1 != RowSense::Le).count();
    let art_start = cols + slacks;
    let total = art_start + artificials;
    let width = total + 1;
    let mut cells = vec![0.0; m * width];
    let mut basis = vec![0; m];
    let (mut next_slack, mut next_art) = (cols, art_start);
    for (i, (coeffs, sense, rhs)) in dense.iter().enumerate() {
        let row = &mut cells[i * width..(i + 1) * width];
        row[..cols].copy_from_slice(coeffs);
        row[total] = *rhs;
        match sense {
            RowSense::Le => {
                row[next_slack] = 1.0;
                basis[i] = next_slack;
                next_slack += 1;
            }
            RowSense::Ge => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
            RowSense::Eq => {
                row[next_art] = 1.0;
                basis[i] = next_art;
                next_art += 1;
            }
        }
    }
    let mut tab = Tableau {
        cells,
        rows: m,
        width,
        basis,
        reduced: vec![],
    };
    let mut budget = MAX_ITERATIONS;

    if artificials > 0 {
        let mut phase_one = vec![0.0; total];
        phase_one[art_start..].iter_mut().for_each(|c| *c = 1.0);
        tab.set_costs(&phase_one);
        match tab.optimize(total, deadline, &mut budget) {
            Step::Optimal => {}
            Step::Unbounded | Step::Failed => return LpOutcome::Failed,
            Step::TimeLimit => return LpOutcome::TimeLimit,
        }
        let infeasibility: f64 = (0..tab.rows)
            .filter(|&i| tab.basis[i] >= art_start)
            .map(|i| tab.rhs(i))
            .sum();
        if infeasibility > INFEASIBILITY_TOL {
            return LpOutcome::Infeasible;
        }
        let mut i = 0;
        while i < tab.rows {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| tab.at(i, j).abs() > PIVOT_TOL) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.remove_row(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut costs = vec![0.0; total];
    for (j, map) in maps.iter().enumerate() {
        let c = lp.cost[j];
        match *map {
            ColumnMap::Shift { col, .. } => costs[col] = c,
            ColumnMap::Flip { col, .. } => costs[col] = -c,
            ColumnMap::Split { pos, neg } => {
                costs[pos] = c;
                costs[neg] = -c;
            }
        }
    }
    tab.set_costs(&costs);
    match tab.optimize(art_start, deadline, &mut budget) {
        Step::Optimal => {}
        Step::Unbounded => return LpOutcome::Unbounded,
        Step::TimeLimit => return LpOutcome::TimeLimit,
        Step::Failed => return LpOutcome::Failed,
    }

    let mut values = vec![0.0; total];
    for i in 0..tab.rows {
        values[tab.basis[i]] = tab.rhs(i).max(0.0);
    }
    let x: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            ColumnMap::Shift { col, lower } => lower + values[col],
            ColumnMap::Flip { col, upper } => upper - values[col],
            ColumnMap::Split { pos, neg } => values[pos] - values[neg],
        })
        .collect();
    let value = lp.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}
