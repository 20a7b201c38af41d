//! Exact two-phase primal simplex with Bland's pivoting rule.
//!
//! Solves `maximize c·x subject to rows, x ≥ 0` over the rationals. Bland's
//! rule (lowest-index entering column, lowest-index leaving basic variable
//! among ratio ties) rules out cycling, so the solver always terminates.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        LinearProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars(), "constraint width");
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    /// Rows of `[coefficients..., rhs]`.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    num_original: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars();
        let m = lp.constraints.len();
        let num_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let first_artificial = n + num_slack;
        let width = first_artificial + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut slack = n;
        for (r, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&c.coeffs);
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width - 1] = c.rhs.clone();
            if c.rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
            row[first_artificial + r] = Rational::one();
            rows.push(row);
        }
        Tableau {
            rows,
            basis: (first_artificial..first_artificial + m).collect(),
            num_original: n,
            first_artificial,
            width,
        }
    }

    fn width(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        let inv = pivot.recip();
        for v in self.rows[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[row].clone();
        for (r, other) in self.rows.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations maximizing `cost` over columns `< allowed`.
    /// Returns false if the objective is unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        let rhs = self.width() - 1;
        loop {
            // Reduced cost c_j - c_B B^-1 A_j; enter on the lowest index with a positive one.
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[r][j].is_zero() {
                        reduced -= &(&cost[b] * &self.rows[r][j]);
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else { return true };
            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][rhs] / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn solve(mut self, objective: &[Rational]) -> LpOutcome {
        let width = self.width();
        let rhs = width - 1;
        // Phase 1: maximize minus the sum of artificials.
        let mut phase1 = vec![Rational::zero(); width - 1];
        for c in phase1.iter_mut().skip(self.first_artificial) {
            *c = -Rational::one();
        }
        self.optimize(&phase1, width - 1);
        let infeasibility: Rational = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= self.first_artificial)
            .map(|(r, _)| self.rows[r][rhs].clone())
            .sum();
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining (zero-valued) artificials out; drop redundant rows.
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        let mut phase2 = vec![Rational::zero(); width - 1];
        phase2[..self.num_original].clone_from_slice(objective);
        if !self.optimize(&phase2, self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.num_original];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.num_original {
                x[b] = self.rows[r][rhs].clone();
            }
        }
        let value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        LpOutcome::Optimal { x, value }
    }
}
