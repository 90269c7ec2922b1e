//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Every answer carries a certificate that [`LinearProgram::verify`] checks
//! exactly: a feasible point, a Farkas vector for infeasibility, or a
//! feasible point plus an improving ray for unboundedness.

use num_traits::{Signed, Zero};

use crate::linalg::dot;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `coeffs · x (<= | >= | =) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self { coeffs, relation: Relation::Le, rhs }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self { coeffs, relation: Relation::Ge, rhs }
    }

    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self { coeffs, relation: Relation::Eq, rhs }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    /// Feasible; for `maximize`, an optimum was reached.
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Point(Vec<Rational>),
    /// One multiplier per constraint: `>= 0` on `Le` rows, `<= 0` on `Ge`
    /// rows, with `Σ y_k a_k` vanishing on free variables, non-negative on
    /// non-negative ones, and `Σ y_k b_k < 0`.
    Farkas(Vec<Rational>),
    Ray {
        point: Vec<Rational>,
        direction: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub certificate: Certificate,
    pub objective: Option<Rational>,
}

impl LpResult {
    pub fn point(&self) -> Option<&[Rational]> {
        match &self.certificate {
            Certificate::Point(p) | Certificate::Ray { point: p, .. } => Some(p),
            Certificate::Farkas(_) => None,
        }
    }
}

/// Variables are free unless marked non-negative.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    n_vars: usize,
    nonneg: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            nonneg: vec![false; n_vars],
            constraints: Vec::new(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn set_nonneg(&mut self, var: usize) {
        self.nonneg[var] = true;
    }

    pub fn push(&mut self, c: Constraint) {
        assert_eq!(c.coeffs.len(), self.n_vars, "constraint width");
        self.constraints.push(c);
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn feasible(&self) -> LpResult {
        Solver::build(self).solve(None)
    }

    pub fn maximize(&self, objective: &[Rational]) -> LpResult {
        assert_eq!(objective.len(), self.n_vars, "objective width");
        Solver::build(self).solve(Some(objective))
    }

    fn point_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars
            && self.constraints.iter().all(|c| c.holds(x))
            && self.nonneg.iter().zip(x).all(|(&nn, v)| !nn || !v.is_negative())
    }

    /// Exact check of a result's certificate.
    pub fn verify(&self, result: &LpResult, objective: Option<&[Rational]>) -> bool {
        match (&result.status, &result.certificate) {
            (LpStatus::Feasible, Certificate::Point(x)) => {
                self.point_feasible(x)
                    && match (objective, &result.objective) {
                        (Some(c), Some(v)) => dot(c, x) == *v,
                        (None, _) => true,
                        _ => false,
                    }
            }
            (LpStatus::Infeasible, Certificate::Farkas(y)) => {
                if y.len() != self.constraints.len() {
                    return false;
                }
                let signs_ok = self.constraints.iter().zip(y).all(|(c, v)| match c.relation {
                    Relation::Le => !v.is_negative(),
                    Relation::Ge => !v.is_positive(),
                    Relation::Eq => true,
                });
                let combo_ok = (0..self.n_vars).all(|j| {
                    let s = self
                        .constraints
                        .iter()
                        .zip(y)
                        .fold(Rational::zero(), |acc, (c, v)| acc + v * &c.coeffs[j]);
                    if self.nonneg[j] {
                        !s.is_negative()
                    } else {
                        s.is_zero()
                    }
                });
                let rhs = self
                    .constraints
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (c, v)| acc + v * &c.rhs);
                signs_ok && combo_ok && rhs.is_negative()
            }
            (LpStatus::Unbounded, Certificate::Ray { point, direction }) => {
                let Some(c) = objective else { return false };
                self.point_feasible(point)
                    && direction.len() == self.n_vars
                    && self.constraints.iter().all(|k| {
                        let v = dot(&k.coeffs, direction);
                        match k.relation {
                            Relation::Le => !v.is_positive(),
                            Relation::Ge => !v.is_negative(),
                            Relation::Eq => v.is_zero(),
                        }
                    })
                    && self.nonneg.iter().zip(direction).all(|(&nn, v)| !nn || !v.is_negative())
                    && dot(c, direction).is_positive()
            }
            _ => false,
        }
    }
}

/// Standard-form tableau: columns are split variables, then one slack per
/// inequality row, then one artificial per row.
struct Solver<'a> {
    lp: &'a LinearProgram,
    /// For each original variable: its positive column and, if free, its
    /// negative column.
    var_cols: Vec<(usize, Option<usize>)>,
    art_start: usize,
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Original constraint index of each tableau row.
    origin: Vec<usize>,
    /// `-1` when the original row was negated to make its rhs non-negative.
    flipped: Vec<bool>,
}

enum Outcome {
    Optimal,
    Unbounded(usize),
}

impl<'a> Solver<'a> {
    fn build(lp: &'a LinearProgram) -> Self {
        let mut var_cols = Vec::with_capacity(lp.n_vars);
        let mut next = 0;
        for &nn in &lp.nonneg {
            if nn {
                var_cols.push((next, None));
                next += 1;
            } else {
                var_cols.push((next, Some(next + 1)));
                next += 2;
            }
        }
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let m = lp.constraints.len();
        let art_start = next + n_slack;
        let ncols = art_start + m;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut slack = next;
        let mut basis = Vec::with_capacity(m);
        for (k, c) in lp.constraints.iter().enumerate() {
            let mut unit_slack = None;
            let mut row = vec![Rational::zero(); ncols];
            for (j, a) in c.coeffs.iter().enumerate() {
                let (pos, neg) = var_cols[j];
                row[pos] = a.clone();
                if let Some(neg) = neg {
                    row[neg] = -a.clone();
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    unit_slack = Some((slack, false));
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    unit_slack = Some((slack, true));
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut b = c.rhs.clone();
            let flip = b.is_negative();
            // A slack whose coefficient is +1 after flipping starts basic;
            // the artificial column still records the inverse basis.
            basis.push(match unit_slack {
                Some((col, needs_flip)) if needs_flip == flip => col,
                _ => art_start + k,
            });
            if flip {
                for v in row.iter_mut() {
                    *v = -std::mem::take(v);
                }
                b = -b;
            }
            row[art_start + k] = Rational::from_integer(1.into());
            rows.push(row);
            rhs.push(b);
            flipped.push(flip);
        }
        Self {
            lp,
            var_cols,
            art_start,
            ncols,
            rows,
            rhs,
            basis,
            origin: (0..m).collect(),
            flipped,
        }
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.art_start
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let nz: Vec<usize> = (0..self.ncols)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for k in 0..self.rows.len() {
            if k == r || self.rows[k][c].is_zero() {
                continue;
            }
            let f = self.rows[k][c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.rows[k][j] -= delta;
            }
            self.rhs[k] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · z` from the current basic feasible solution.
    fn run(&mut self, cost: &[Rational], allowed: impl Fn(usize) -> bool) -> Outcome {
        // Reduced costs, kept current across pivots.
        let mut reduced = cost.to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (d, v) in reduced.iter_mut().zip(row) {
                if !v.is_zero() {
                    *d -= &cost[b] * v;
                }
            }
        }
        loop {
            let mut is_basic = vec![false; self.ncols];
            for &b in &self.basis {
                is_basic[b] = true;
            }
            // Bland: lowest-index improving column.
            let entering = (0..self.ncols)
                .find(|&j| !is_basic[j] && allowed(j) && reduced[j].is_positive());
            let Some(c) = entering else {
                return Outcome::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => {
                    self.pivot(r, c);
                    let f = reduced[c].clone();
                    for (d, v) in reduced.iter_mut().zip(&self.rows[r]) {
                        if !v.is_zero() {
                            *d -= &f * v;
                        }
                    }
                }
                None => return Outcome::Unbounded(c),
            }
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs[r].clone();
        }
        z
    }

    fn to_original(&self, z: &[Rational]) -> Vec<Rational> {
        self.var_cols
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &z[pos] - &z[neg],
                None => z[pos].clone(),
            })
            .collect()
    }

    fn solve(mut self, objective: Option<&[Rational]>) -> LpResult {
        let one = Rational::from_integer(1.into());
        let phase1: Vec<Rational> = (0..self.ncols)
            .map(|j| if self.is_artificial(j) { -one.clone() } else { Rational::zero() })
            .collect();
        // Phase one is bounded above by zero; artificials never re-enter.
        let art_start = self.art_start;
        let _ = self.run(&phase1, |j| j < art_start);
        let infeasibility: Rational = self
            .basis
            .iter()
            .zip(&self.rhs)
            .filter(|(&b, _)| self.is_artificial(b))
            .fold(Rational::zero(), |acc, (_, v)| acc + v);
        if infeasibility.is_positive() {
            return self.farkas();
        }
        self.drive_out_artificials();
        let Some(objective) = objective else {
            let x = self.to_original(&self.column_values());
            return LpResult {
                status: LpStatus::Feasible,
                certificate: Certificate::Point(x),
                objective: None,
            };
        };
        let mut cost = vec![Rational::zero(); self.ncols];
        for (j, c) in objective.iter().enumerate() {
            let (pos, neg) = self.var_cols[j];
            cost[pos] = c.clone();
            if let Some(neg) = neg {
                cost[neg] = -c.clone();
            }
        }
        match self.run(&cost, |j| j < art_start) {
            Outcome::Optimal => {
                let x = self.to_original(&self.column_values());
                let value = dot(objective, &x);
                LpResult {
                    status: LpStatus::Feasible,
                    certificate: Certificate::Point(x),
                    objective: Some(value),
                }
            }
            Outcome::Unbounded(c) => {
                let point = self.to_original(&self.column_values());
                let mut dz = vec![Rational::zero(); self.ncols];
                dz[c] = one;
                for (r, &b) in self.basis.iter().enumerate() {
                    dz[b] = -self.rows[r][c].clone();
                }
                let direction = self.to_original(&dz);
                LpResult {
                    status: LpStatus::Unbounded,
                    certificate: Certificate::Ray { point, direction },
                    objective: None,
                }
            }
        }
    }

    /// Dual multipliers of phase one, mapped back to the original rows.
    fn farkas(&self) -> LpResult {
        let m = self.lp.constraints.len();
        let mut y = vec![Rational::zero(); m];
        for k in 0..m {
            let col = self.art_start + k;
            // π_k = Σ_r c_B(r) (B^{-1})_{r,k} with unit cost on artificials.
            let pi = self
                .rows
                .iter()
                .zip(&self.basis)
                .filter(|(_, &b)| self.is_artificial(b))
                .fold(Rational::zero(), |acc, (row, _)| acc + &row[col]);
            y[k] = if self.flipped[k] { pi } else { -pi };
        }
        LpResult {
            status: LpStatus::Infeasible,
            certificate: Certificate::Farkas(y),
            objective: None,
        }
    }

    fn drive_out_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.is_artificial(self.basis[r]) {
                match (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(c) => self.pivot(r, c),
                    None => {
                        // Redundant equation.
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                        self.origin.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn maximize_small() {
        // max x + y, x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.push(Constraint::le(v(&[1, 2]), int(4)));
        lp.push(Constraint::le(v(&[3, 1]), int(6)));
        lp.push(Constraint::ge(v(&[1, 0]), int(0)));
        lp.push(Constraint::ge(v(&[0, 1]), int(0)));
        let obj = v(&[1, 1]);
        let r = lp.maximize(&obj);
        assert_eq!(r.status, LpStatus::Feasible);
        assert_eq!(r.objective, Some(ratio(14, 5)));
        assert!(lp.verify(&r, Some(&obj)));
    }

    #[test]
    fn infeasible_has_farkas() {
        let mut lp = LinearProgram::new(2);
        lp.push(Constraint::le(v(&[1, 0]), int(-1)));
        lp.push(Constraint::ge(v(&[1, 0]), int(0)));
        lp.push(Constraint::eq(v(&[1, 1]), int(3)));
        let r = lp.feasible();
        assert_eq!(r.status, LpStatus::Infeasible);
        assert!(lp.verify(&r, None));
    }

    #[test]
    fn unbounded_has_ray() {
        let mut lp = LinearProgram::new(2);
        lp.push(Constraint::le(v(&[1, -1]), int(1)));
        lp.set_nonneg(1);
        let obj = v(&[1, 0]);
        let r = lp.maximize(&obj);
        assert_eq!(r.status, LpStatus::Unbounded);
        assert!(lp.verify(&r, Some(&obj)));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.push(Constraint::eq(v(&[1, 1]), int(2)));
        lp.push(Constraint::eq(v(&[2, 2]), int(4)));
        lp.push(Constraint::le(v(&[1, 0]), int(5)));
        let obj = v(&[1, -1]);
        let r = lp.maximize(&obj);
        assert_eq!(r.objective, Some(int(8)));
        assert!(lp.verify(&r, Some(&obj)));
    }

    #[test]
    fn verify_rejects_forgeries() {
        let mut lp = LinearProgram::new(1);
        lp.push(Constraint::le(v(&[1]), int(1)));
        let fake = LpResult {
            status: LpStatus::Feasible,
            certificate: Certificate::Point(v(&[2])),
            objective: None,
        };
        assert!(!lp.verify(&fake, None));
        let fake = LpResult {
            status: LpStatus::Infeasible,
            certificate: Certificate::Farkas(v(&[1])),
            objective: None,
        };
        assert!(!lp.verify(&fake, None));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Klee-Minty style degenerate vertex at the origin.
        let mut lp = LinearProgram::new(3);
        for k in 0..3 {
            lp.set_nonneg(k);
        }
        lp.push(Constraint::le(v(&[1, 1, 1]), int(0)));
        lp.push(Constraint::le(v(&[1, -1, 0]), int(0)));
        lp.push(Constraint::le(v(&[0, 1, -1]), int(0)));
        lp.push(Constraint::le(v(&[1, 0, 0]), int(0)));
        let obj = v(&[1, 1, 1]);
        let r = lp.maximize(&obj);
        assert_eq!(r.objective, Some(int(0)));
        assert!(lp.verify(&r, Some(&obj)));
    }
}
