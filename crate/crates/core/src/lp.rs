//! Dense exact simplex over rationals.
//!
//! Problems are in equality standard form: maximize `c . x` subject to
//! `A x = b`, `x >= 0`. Phase one drives artificial variables to zero, phase
//! two optimizes the real objective. Entering and leaving variables follow
//! Bland's rule, so the method terminates on degenerate instances.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

#[derive(Debug, Clone, Default)]
pub struct StandardForm {
    pub rows: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

impl StandardForm {
    pub fn new(n_vars: usize) -> Self {
        Self {
            rows: Vec::new(),
            rhs: Vec::new(),
            objective: vec![Rational::zero(); n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push_row(&mut self, row: Vec<Rational>, rhs: Rational) {
        debug_assert_eq!(row.len(), self.n_vars());
        self.rows.push(row);
        self.rhs.push(rhs);
    }
}

struct Tableau {
    // m rows of width n_cols + 1; the last entry is the right-hand side
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    n_cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.n_cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over the current basis, never letting columns
    /// `>= allowed` enter. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                        reduced -= &cost[b] * &self.t[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, &b)| acc + &cost[b] * self.rhs(i))
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Runs phase one. On success returns a tableau whose basis contains no
/// artificial columns (redundant rows removed).
fn phase_one(problem: &StandardForm) -> Option<Tableau> {
    let n = problem.n_vars();
    let m = problem.rows.len();
    let n_cols = n + m;
    let mut t = Vec::with_capacity(m);
    for (i, (row, b)) in problem.rows.iter().zip(&problem.rhs).enumerate() {
        let flip = b.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|k| {
            if k == i {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        r.push(if flip { -b.clone() } else { b.clone() });
        t.push(r);
    }
    let mut tab = Tableau {
        t,
        basis: (n..n_cols).collect(),
        n_cols,
    };
    let mut cost = vec![Rational::zero(); n_cols];
    for c in cost.iter_mut().skip(n) {
        *c = Rational::from_integer((-1).into());
    }
    // the artificial objective is bounded above by zero
    tab.optimize(&cost, n_cols);
    if !tab.objective_value(&cost).is_zero() {
        return None;
    }
    // drive remaining (zero-valued) artificials out of the basis
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    Some(tab)
}

pub fn solve(problem: &StandardForm) -> LpOutcome {
    let n = problem.n_vars();
    let Some(mut tab) = phase_one(problem) else {
        return LpOutcome::Infeasible;
    };
    let mut cost = problem.objective.clone();
    cost.resize(tab.n_cols, Rational::zero());
    if !tab.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        value: tab.objective_value(&cost),
        x: tab.solution(n),
    }
}

/// A point of `{x >= 0 : A x = b}`, if any.
pub fn feasible_point(problem: &StandardForm) -> Option<Vec<Rational>> {
    phase_one(problem).map(|tab| tab.solution(problem.n_vars()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn form(rows: Vec<Vec<i64>>, rhs: Vec<i64>, obj: Vec<i64>) -> StandardForm {
        let mut p = StandardForm::new(obj.len());
        p.objective = obj.into_iter().map(int).collect();
        for (r, b) in rows.into_iter().zip(rhs) {
            p.push_row(r.into_iter().map(int).collect(), int(b));
        }
        p
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6 (slacks s, t)
        let p = form(
            vec![vec![1, 1, 1, 0], vec![1, 3, 0, 1]],
            vec![4, 6],
            vec![3, 2, 0, 0],
        );
        match solve(&p) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, int(12));
                assert_eq!(x[0], int(4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_optimum() {
        // max x + y st 2x + y <= 3, x + 2y <= 3
        let p = form(
            vec![vec![2, 1, 1, 0], vec![1, 2, 0, 1]],
            vec![3, 3],
            vec![1, 1, 0, 0],
        );
        match solve(&p) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, int(2));
                assert_eq!(x[0], int(1));
                assert_eq!(x[1], int(1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1 and x + y = 2
        let p = form(vec![vec![1, 1], vec![1, 1]], vec![1, 2], vec![0, 0]);
        assert_eq!(solve(&p), LpOutcome::Infeasible);
        assert!(feasible_point(&p).is_none());
    }

    #[test]
    fn detects_unboundedness() {
        // max x st x - y = 1
        let p = form(vec![vec![1, -1]], vec![1], vec![1, 0]);
        assert_eq!(solve(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_and_negative_rhs() {
        // x + y = 1, 2x + 2y = 2, -x = -1/3 (via row scaled)
        let mut p = StandardForm::new(2);
        p.push_row(vec![int(1), int(1)], int(1));
        p.push_row(vec![int(2), int(2)], int(2));
        p.push_row(vec![int(-3), int(0)], int(-1));
        let x = feasible_point(&p).unwrap();
        assert_eq!(x, vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance; Bland's rule must terminate
        let mut p = StandardForm::new(7);
        p.objective = vec![rat(3, 4), int(-150), rat(1, 50), int(-6), int(0), int(0), int(0)];
        p.push_row(
            vec![rat(1, 4), int(-60), rat(-1, 25), int(9), int(1), int(0), int(0)],
            int(0),
        );
        p.push_row(
            vec![rat(1, 2), int(-90), rat(-1, 50), int(3), int(0), int(1), int(0)],
            int(0),
        );
        p.push_row(
            vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
            int(1),
        );
        match solve(&p) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 20)),
            other => panic!("{other:?}"),
        }
    }
}
