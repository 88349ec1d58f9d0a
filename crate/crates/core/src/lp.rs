//! Exact two-phase primal simplex over rationals with Bland's rule.
//!
//! Variables are free; the solver splits each into a nonnegative pair
//! internally. Problems here have at most a few dozen rows, so the dense
//! tableau is fine.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `maximize objective·x` subject to `a·x ≤ b` rows and `a·x = b` rows,
/// with every `x_i` free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    objective: Vec<Rational>,
    le: Vec<(Vec<Rational>, Rational)>,
    eq: Vec<(Vec<Rational>, Rational)>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, objective: vec![Rational::zero(); num_vars], le: Vec::new(), eq: Vec::new() }
    }

    pub fn maximize(mut self, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.le.push((coeffs, rhs));
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.eq.push((coeffs, rhs));
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(self)
    }
}

struct Tableau {
    /// `rows[r]` has `ncols + 1` entries; the last one is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    /// First artificial column; everything at or past it is artificial.
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let nv = lp.num_vars;
        let nslack = lp.le.len();
        let m = lp.le.len() + lp.eq.len();
        let structural = 2 * nv + nslack;

        // Rows whose slack can start in the basis need no artificial.
        let mut needs_artificial = Vec::with_capacity(m);
        for (_, b) in &lp.le {
            needs_artificial.push(b.is_negative());
        }
        needs_artificial.extend(std::iter::repeat_n(true, lp.eq.len()));
        let nart = needs_artificial.iter().filter(|&&a| a).count();
        let ncols = structural + nart;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = structural;
        let all = lp.le.iter().map(|r| (r, true)).chain(lp.eq.iter().map(|r| (r, false)));
        for (r, ((coeffs, rhs), is_le)) in all.enumerate() {
            let mut row = vec![Rational::zero(); ncols + 1];
            let flip = rhs.is_negative();
            for (j, a) in coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let a = if flip { -a } else { a.clone() };
                row[nv + j] = -&a;
                row[j] = a;
            }
            if is_le {
                row[2 * nv + r] = if flip { -Rational::one() } else { Rational::one() };
            }
            row[ncols] = if flip { -rhs } else { rhs.clone() };
            if needs_artificial[r] {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(2 * nv + r);
            }
            rows.push(row);
        }
        Self { rows, basis, ncols, first_artificial: structural }
    }

    fn pivot(&mut self, cost: &mut [Rational], r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut [Rational]| {
            if row[c].is_zero() {
                return;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(cost);
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Minimizes the cost row in place. `cost` holds reduced costs followed by
    /// minus the current objective value. Returns `false` if unbounded.
    fn minimize(&mut self, cost: &mut [Rational], allowed: usize) -> bool {
        loop {
            // Bland: lowest-index improving column enters.
            let Some(enter) = (0..allowed).find(|&j| cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(cost, r, enter);
        }
    }

    fn reduced_cost(&self, raw: Vec<Rational>) -> Vec<Rational> {
        let mut cost = raw;
        cost.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            let cb = cost[b].clone();
            for (x, a) in cost.iter_mut().zip(row) {
                if !a.is_zero() {
                    *x -= &cb * a;
                }
            }
        }
        cost
    }

    fn solve(mut self, lp: &LinearProgram) -> LpOutcome {
        let nv = lp.num_vars;

        if self.ncols > self.first_artificial {
            let mut raw = vec![Rational::zero(); self.ncols];
            for c in raw[self.first_artificial..].iter_mut() {
                *c = Rational::one();
            }
            let mut cost = self.reduced_cost(raw);
            // Phase one is bounded below by zero.
            self.minimize(&mut cost, self.ncols);
            if !cost[self.ncols].is_zero() {
                return LpOutcome::Infeasible;
            }
            self.drive_out_artificials(&mut cost);
        }

        let mut raw = vec![Rational::zero(); self.ncols];
        for (j, c) in lp.objective.iter().enumerate() {
            raw[j] = -c;
            raw[nv + j] = c.clone();
        }
        let mut cost = self.reduced_cost(raw);
        if !self.minimize(&mut cost, self.first_artificial) {
            return LpOutcome::Unbounded;
        }

        let mut z = vec![Rational::zero(); self.ncols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            z[b] = row[self.ncols].clone();
        }
        let point: Vec<Rational> = (0..nv).map(|j| &z[j] - &z[nv + j]).collect();
        LpOutcome::Optimal { value: cost[self.ncols].clone(), point }
    }

    /// After phase one, pivots zero-level artificials out of the basis, dropping
    /// rows that turn out to be linearly dependent.
    fn drive_out_artificials(&mut self, cost: &mut [Rational]) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] < self.first_artificial {
                r += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                Some(j) => {
                    self.pivot(cost, r, j);
                    r += 1;
                }
                None => {
                    self.rows.remove(r);
                    self.basis.remove(r);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simple_maximum() {
        // max x + y, x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2).maximize(v(&[1, 1]));
        lp.add_le(v(&[1, 2]), int(4));
        lp.add_le(v(&[3, 1]), int(6));
        lp.add_le(v(&[-1, 0]), int(0));
        lp.add_le(v(&[0, -1]), int(0));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(point, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn free_variables_can_go_negative() {
        // max -x subject to x >= -3 (i.e. -x <= 3)
        let mut lp = LinearProgram::new(1).maximize(v(&[-1]));
        lp.add_le(v(&[-1]), int(3));
        assert_eq!(lp.solve().optimal_value(), Some(&int(3)));
    }

    #[test]
    fn detects_infeasible() {
        let mut lp = LinearProgram::new(1);
        lp.add_le(v(&[1]), int(0));
        lp.add_le(v(&[-1]), int(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::new(2).maximize(v(&[1, 0]));
        lp.add_le(v(&[0, 1]), int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equalities_and_dependent_rows() {
        // x + y = 2 twice, max x with x <= 5, y >= 0
        let mut lp = LinearProgram::new(2).maximize(v(&[1, 0]));
        lp.add_eq(v(&[1, 1]), int(2));
        lp.add_eq(v(&[2, 2]), int(4));
        lp.add_le(v(&[1, 0]), int(5));
        lp.add_le(v(&[0, -1]), int(0));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(2));
                assert_eq!(point, v(&[2, 0]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // A classic cycling example for Dantzig's rule (Beale).
        let mut lp = LinearProgram::new(4).maximize(vec![rat(3, 4), int(-150), rat(1, 50), int(-6)]);
        lp.add_le(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], int(0));
        lp.add_le(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], int(0));
        lp.add_le(v(&[0, 0, 1, 0]), int(1));
        for i in 0..4 {
            let mut row = v(&[0, 0, 0, 0]);
            row[i] = int(-1);
            lp.add_le(row, int(0));
        }
        assert_eq!(lp.solve().optimal_value(), Some(&rat(1, 20)));
    }
}
