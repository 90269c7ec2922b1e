//! Exact dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Reduced row echelon form with the pivot column of each non-zero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination; zero rows are dropped from the result.
pub fn rref(mut m: Vec<Vec<Rational>>) -> Rref {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    Rref { rows: m, pivots }
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    rref(m.to_vec()).pivots.len()
}

/// Unique solution of the square system `a x = b`, `None` when singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            assert_eq!(row.len(), n, "system must be square");
            row.iter().cloned().chain(std::iter::once(v.clone())).collect()
        })
        .collect();
    let r = rref(aug);
    if r.pivots.len() != n || r.pivots.iter().enumerate().any(|(k, &c)| c != k) {
        return None;
    }
    Some(r.rows.into_iter().map(|row| row[n].clone()).collect())
}

/// Parametrization `x0 + Σ z_k·basis_k` of `{x : a x = b}` over `n` unknowns,
/// or `None` when the system is inconsistent.
pub fn affine_solution_space(
    a: &[Vec<Rational>],
    b: &[Rational],
    n: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| row.iter().cloned().chain(std::iter::once(v.clone())).collect())
        .collect();
    let r = rref(aug);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); n];
    for (row, &c) in r.rows.iter().zip(&r.pivots) {
        x0[c] = row[n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &c) in r.rows.iter().zip(&r.pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect();
    Some((x0, basis))
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solves_square() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve_square(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![crate::rational::ratio(4, 5), crate::rational::ratio(7, 5)]);
        assert!(solve_square(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn solution_space() {
        // x + y + z = 3, x - y = 0
        let a = m(&[&[1, 1, 1], &[1, -1, 0]]);
        let (x0, basis) = affine_solution_space(&a, &[int(3), int(0)], 3).unwrap();
        assert_eq!(basis.len(), 1);
        for row in a.iter().zip([int(3), int(0)]) {
            assert_eq!(dot(row.0, &x0), row.1);
            assert_eq!(dot(row.0, &basis[0]), int(0));
        }
        assert!(affine_solution_space(&m(&[&[1, 1], &[1, 1]]), &[int(1), int(2)], 2).is_none());
    }
}
