//! Dense two-phase simplex with Bland's rule, generic over the field.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Minimize `objective . x` subject to `equalities`, `inequalities`
/// (`row . x <= rhs`) and `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    pub equalities: Vec<(Vec<T>, T)>,
    pub inequalities: Vec<(Vec<T>, T)>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize, objective: Vec<T>) -> Self {
        assert_eq!(objective.len(), num_vars);
        LinearProgram { num_vars, objective, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn add_equality(&mut self, row: Vec<T>, rhs: T) {
        assert_eq!(row.len(), self.num_vars);
        self.equalities.push((row, rhs));
    }

    pub fn add_inequality(&mut self, row: Vec<T>, rhs: T) {
        assert_eq!(row.len(), self.num_vars);
        self.inequalities.push((row, rhs));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub x: Vec<T>,
    pub objective: T,
    pub pivots: usize,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Reduced costs; the last entry is minus the objective value.
    cost: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
    max_pivots: Option<usize>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<T>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs Bland's rule over the columns `allowed`.
    fn run(&mut self, allowed: usize) -> Result<Step> {
        let rhs = self.width();
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.cost[j].is_neg()) else {
                return Ok(Step::Optimal);
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rows[i][rhs].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Ok(Step::Unbounded);
            };
            if self.max_pivots.is_some_and(|m| self.pivots >= m) {
                return Err(Error::BudgetExceeded {
                    budget: self.max_pivots.unwrap() as u64,
                    best: crate::Rational::from_integer(0.into()),
                });
            }
            self.pivot(r, enter);
        }
    }
}

/// Solves `lp` exactly when `T` is exact. `max_pivots` bounds the work.
pub fn solve<T: Scalar>(lp: &LinearProgram<T>, max_pivots: Option<usize>) -> Result<LpSolution<T>> {
    let n = lp.num_vars;
    let slacks = lp.inequalities.len();
    let mut rows_src: Vec<(Vec<T>, T, Option<usize>)> = Vec::new();
    for (k, (row, b)) in lp.inequalities.iter().enumerate() {
        rows_src.push((row.clone(), b.clone(), Some(k)));
    }
    for (row, b) in &lp.equalities {
        rows_src.push((row.clone(), b.clone(), None));
    }
    let m = rows_src.len();
    // columns: originals, slacks, then one artificial per row that needs it
    let mut needs_artificial = Vec::with_capacity(m);
    for (_, b, slack) in &rows_src {
        needs_artificial.push(slack.is_none() || b.is_neg());
    }
    let artificials: usize = needs_artificial.iter().filter(|&&a| a).count();
    let width = n + slacks + artificials;
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = n + slacks;
    for (i, (row, b, slack)) in rows_src.into_iter().enumerate() {
        let mut t = vec![T::zero(); width + 1];
        let flip = b.is_neg();
        for (j, v) in row.into_iter().enumerate() {
            t[j] = if flip { -v } else { v };
        }
        if let Some(k) = slack {
            t[n + k] = if flip { -T::one() } else { T::one() };
        }
        t[width] = if flip { -b } else { b };
        if needs_artificial[i] {
            t[next_art] = T::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(n + slack.unwrap());
        }
        rows.push(t);
    }
    let mut tab = Tableau { rows, cost: vec![T::zero(); width + 1], basis, pivots: 0, max_pivots };
    if artificials > 0 {
        for j in n + slacks..width {
            tab.cost[j] = T::one();
        }
        for i in 0..m {
            if tab.basis[i] >= n + slacks {
                let row = tab.rows[i].clone();
                for (c, v) in tab.cost.iter_mut().zip(row) {
                    *c = c.clone() - v;
                }
            }
        }
        tab.run(width)?;
        let phase_one = -tab.cost[width].clone();
        if phase_one.is_pos() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![T::zero(); n],
                objective: T::zero(),
                pivots: tab.pivots,
            });
        }
        for i in 0..m {
            if tab.basis[i] >= n + slacks {
                if let Some(j) = (0..n + slacks).find(|&j| !tab.rows[i][j].is_negligible()) {
                    tab.pivot(i, j);
                }
            }
        }
    }
    let mut cost = vec![T::zero(); width + 1];
    cost[..n].clone_from_slice(&lp.objective);
    for i in 0..m {
        let b = tab.basis[i];
        if b < n && !lp.objective[b].is_zero() {
            let f = lp.objective[b].clone();
            for (c, v) in cost.iter_mut().zip(&tab.rows[i]) {
                *c = c.clone() - f.clone() * v.clone();
            }
        }
    }
    tab.cost = cost;
    let status = match tab.run(n + slacks)? {
        Step::Optimal => LpStatus::Optimal,
        Step::Unbounded => LpStatus::Unbounded,
    };
    let mut x = vec![T::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rows[i][width].clone();
        }
    }
    Ok(LpSolution { status, objective: -tab.cost[width].clone(), x, pivots: tab.pivots })
}
