//! Brute-force verifiers for the closed-form results: exact LP feasibility,
//! redundancy scans and affine dimension.

pub mod simplex;

use num_traits::Zero;

use crate::condition::{conditions, System};
use crate::geometry::hrep::HRep;
use crate::linalg::{affine_solution_space, dot, rank};
use crate::rational::{self, Rational};
use crate::tableau::Params;

pub use simplex::{Certificate, Constraint, LinearProgram, LpResult, LpStatus, Relation};

fn hrep_program(hrep: &HRep, skip: Option<usize>, active: &[bool]) -> LinearProgram {
    let mut lp = LinearProgram::new(hrep.dimension());
    for (k, q) in hrep.inequalities.iter().enumerate() {
        if Some(k) != skip && active[k] {
            lp.push(Constraint::le(q.coeffs.clone(), q.rhs.clone()));
        }
    }
    lp
}

/// Feasibility of the HRep's inequalities together with `extra`.
pub fn lp_feasible(hrep: &HRep, extra: &[Constraint]) -> LpResult {
    let mut lp = hrep_program(hrep, None, &vec![true; hrep.inequalities.len()]);
    for c in extra {
        lp.push(c.clone());
    }
    lp.feasible()
}

/// Flags the inequalities kept by a redundancy scan. Inequalities are
/// visited in order; one whose maximum subject to the remaining kept ones
/// stays within its right-hand side is dropped.
pub fn irredundant(hrep: &HRep) -> Vec<bool> {
    let mut active = vec![true; hrep.inequalities.len()];
    for (k, q) in hrep.inequalities.iter().enumerate() {
        let lp = hrep_program(hrep, Some(k), &active);
        let result = lp.maximize(&q.coeffs);
        debug_assert!(lp.verify(&result, Some(&q.coeffs)));
        let necessary = match result.status {
            LpStatus::Unbounded => true,
            LpStatus::Feasible => result.objective.as_ref().is_some_and(|v| *v > q.rhs),
            LpStatus::Infeasible => false,
        };
        active[k] = necessary;
    }
    active
}

pub fn irredundant_count(hrep: &HRep) -> usize {
    irredundant(hrep).into_iter().filter(|&b| b).count()
}

/// Affine dimension of the set cut out by the full definitional system,
/// computed without reference to the reduced system: the explicit
/// equalities are solved exactly, then implicit equalities among the
/// inequalities are found by LP. Returns `None` for an empty set.
pub fn dimension_oracle(p: Params) -> Option<usize> {
    let vars = p.rows() * p.cols();
    let index = |i: usize, col: usize| (i - 1) * p.cols() + col;
    let dense = |terms: &[((usize, usize), i64)]| {
        let mut row = vec![Rational::zero(); vars];
        for &((i, col), c) in terms {
            row[index(i, col)] += rational::int(c);
        }
        row
    };
    let (eqs, ineqs): (Vec<_>, Vec<_>) = conditions(p, System::Full)
        .into_iter()
        .partition(|c| c.is_equality());
    let a: Vec<Vec<Rational>> = eqs.iter().map(|c| dense(&c.terms)).collect();
    let b: Vec<Rational> = eqs.iter().map(|c| c.rhs.clone()).collect();
    let (x0, basis) = affine_solution_space(&a, &b, vars)?;
    let r = basis.len();

    // g·x <= h becomes (g K) z <= h - g x0 over the solution space.
    let rows: Vec<(Vec<Rational>, Rational)> = ineqs
        .iter()
        .map(|c| {
            let g = dense(&c.terms);
            let coeffs = basis.iter().map(|k| dot(&g, k)).collect();
            (coeffs, &c.rhs - dot(&g, &x0))
        })
        .collect();

    let mut lp = LinearProgram::new(r);
    for (g, h) in &rows {
        lp.push(Constraint::le(g.clone(), h.clone()));
    }
    // Slacks are non-negative on the set, so the largest total slack of the
    // undecided rows is zero exactly when all of them are implicit
    // equalities. Otherwise the optimum (or an improving ray) exposes at
    // least one row that can be loose.
    let mut candidate = vec![true; rows.len()];
    loop {
        let mut objective = vec![Rational::zero(); r];
        for (g, _) in rows.iter().zip(&candidate).filter(|(_, &c)| c).map(|(row, _)| row) {
            for (o, v) in objective.iter_mut().zip(g) {
                *o -= v;
            }
        }
        let result = lp.maximize(&objective);
        let (point, direction) = match &result.certificate {
            Certificate::Point(z) => (z, None),
            Certificate::Ray { point, direction } => (point, Some(direction)),
            Certificate::Farkas(_) => return None,
        };
        let mut progress = false;
        for (k, (g, h)) in rows.iter().enumerate() {
            if !candidate[k] {
                continue;
            }
            let loose = dot(g, point) < *h
                || direction.is_some_and(|dz| dot(g, dz) < Rational::zero());
            if loose {
                candidate[k] = false;
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let implicit: Vec<Vec<Rational>> = rows
        .iter()
        .zip(&candidate)
        .filter(|(_, &c)| c)
        .map(|((g, _), _)| g.clone())
        .collect();
    Some(r - rank(&implicit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::hrep::Variant;
    use crate::rational::int;

    fn p(n: usize, d: usize) -> Params {
        Params::new(n, d).unwrap()
    }

    #[test]
    fn feasible_with_special_point_coordinates() {
        let h = HRep::new(p(5, 2), Variant::NonRedundant).unwrap();
        let res = lp_feasible(&h, &[]);
        assert_eq!(res.status, LpStatus::Feasible);
        assert!(h.contains_point(res.point().unwrap()));
        let pin = [
            Constraint::eq(vec![int(1), int(0)], int(1)),
            Constraint::eq(vec![int(0), int(1)], int(2)),
        ];
        let res = lp_feasible(&h, &pin);
        assert_eq!(res.point().unwrap(), &[int(1), int(2)]);
    }

    #[test]
    fn contradictory_bounds_infeasible() {
        let h = HRep::new(p(5, 2), Variant::NonRedundant).unwrap();
        let extra = [
            Constraint::le(vec![int(1), int(0)], int(-1)),
            Constraint::ge(vec![int(1), int(0)], int(0)),
        ];
        let res = lp_feasible(&h, &extra);
        assert_eq!(res.status, LpStatus::Infeasible);
        let mut lp = hrep_program(&h, None, &[true; 5]);
        for c in extra {
            lp.push(c);
        }
        assert!(lp.verify(&res, None));
    }

    #[test]
    fn segment_pinned() {
        let h = HRep::new(p(4, 2), Variant::FullReduced).unwrap();
        let res = lp_feasible(&h, &[Constraint::eq(vec![int(1)], int(1))]);
        assert_eq!(res.status, LpStatus::Feasible);
    }

    #[test]
    fn redundancy_spot_values() {
        for (n, d, want) in [(5, 2, 5), (4, 2, 2), (6, 3, 10)] {
            let h = HRep::new(p(n, d), Variant::FullReduced).unwrap();
            assert_eq!(irredundant_count(&h), want, "({n},{d})");
        }
    }

    #[test]
    fn dimension_spot_values() {
        assert_eq!(dimension_oracle(p(6, 4)), Some(3));
        assert_eq!(dimension_oracle(p(7, 3)), Some(6));
        assert_eq!(dimension_oracle(p(5, 5)), Some(0));
        assert_eq!(dimension_oracle(p(0, 0)), Some(0));
        assert_eq!(dimension_oracle(p(4, 1)), Some(0));
    }

    #[test]
    fn hull_dimension_matches_equation_count() {
        // Ambient d(N+1), minus d(d+1)/2 entries in each triangle, minus the
        // N-1 interior column sums.
        for n in 2..8 {
            for d in 1..n {
                let lp_dim = dimension_oracle(p(n, d)).unwrap();
                let count = d * (n + 1) - d * (d + 1) - (n - 1);
                assert_eq!(lp_dim, count, "({n},{d})");
            }
        }
    }
}
