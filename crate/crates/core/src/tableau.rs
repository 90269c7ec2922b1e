//! Eigenstep tableaux and their parameters.
//!
//! A tableau for `(N, d)` is a `d x (N+1)` matrix `λ` whose column `n` holds
//! the non-increasing spectrum of the `n`-th partial frame operator. Rows are
//! indexed mathematically, `1 <= i <= d`, columns `0 <= n <= N`. The scale
//! convention is `‖f_n‖² = d`, so that `FF* = N·I_d` and all entries of a
//! valid tableau lie in `[0, N]`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Frame size `N` and ambient dimension `d`, with `0 <= d <= N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    n: usize,
    d: usize,
}

impl Params {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d > n {
            return Err(Error::InvalidParams { n, d });
        }
        Ok(Self { n, d })
    }

    /// Number of frame vectors `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient dimension `d`.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rows(&self) -> usize {
        self.d
    }

    pub fn cols(&self) -> usize {
        self.n + 1
    }

    /// The parameters `(N, N-d)` of the Naimark-dual polytope.
    pub fn dual(&self) -> Self {
        Self {
            n: self.n,
            d: self.n - self.d,
        }
    }

    /// `d = 0` or `d = N`: the polytope is a single point.
    pub fn is_degenerate(&self) -> bool {
        self.d == 0 || self.d == self.n
    }

    /// Entry forced to `0`: `i > n`.
    pub fn in_zero_triangle(&self, i: usize, col: usize) -> bool {
        i > col
    }

    /// Entry forced to `N`: `i < n + d - N + 1`.
    pub fn in_full_triangle(&self, i: usize, col: usize) -> bool {
        i + self.n < col + self.d + 1
    }

    /// Entry in the parallelogram `i <= n <= N - d + i - 1` of non-fixed
    /// positions.
    pub fn is_open(&self, i: usize, col: usize) -> bool {
        i >= 1 && i <= self.d && i <= col && col + self.d < self.n + i
    }

    /// Fixed value of a triangle entry, `None` inside the parallelogram.
    pub fn fixed_value(&self, i: usize, col: usize) -> Option<usize> {
        if self.in_zero_triangle(i, col) {
            Some(0)
        } else if self.in_full_triangle(i, col) {
            Some(self.n)
        } else {
            None
        }
    }

    /// Open positions in row-major `(i, n)` order.
    pub fn open_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.d {
            for col in 0..=self.n {
                if self.is_open(i, col) {
                    out.push((i, col));
                }
            }
        }
        out
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, d={})", self.n, self.d)
    }
}

/// A `d x (N+1)` matrix of exact rationals. Validity is not part of the type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    params: Params,
    entries: Vec<Rational>,
}

impl Tableau {
    /// Builds a tableau from rows listed `i = 1..=d`, each of length `N + 1`.
    pub fn from_rows(params: Params, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let shape_err = |found: String| Error::ShapeMismatch {
            expected_rows: params.rows(),
            expected_cols: params.cols(),
            found,
        };
        if rows.len() != params.rows() {
            return Err(shape_err(format!("{} rows", rows.len())));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != params.cols()) {
            return Err(shape_err(format!("a row of length {}", bad.len())));
        }
        Ok(Self {
            params,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer convenience constructor, rows listed `i = 1..=d`.
    pub fn from_int_rows(params: Params, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            params,
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    /// Integer rows listed in display order, `i = d` first and `i = 1` last.
    pub fn from_display_rows(params: Params, rows: &[&[i64]]) -> Result<Self> {
        let mut rows = rows.to_vec();
        rows.reverse();
        Self::from_int_rows(params, &rows)
    }

    pub fn from_fn(params: Params, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(params.rows() * params.cols());
        for i in 1..=params.d() {
            for col in 0..=params.n() {
                entries.push(f(i, col));
            }
        }
        Self { params, entries }
    }

    pub fn zeros(params: Params) -> Self {
        Self::from_fn(params, |_, _| Rational::zero())
    }

    pub fn params(&self) -> Params {
        self.params
    }

    fn offset(&self, i: usize, col: usize) -> usize {
        assert!(
            (1..=self.params.d()).contains(&i) && col <= self.params.n(),
            "index ({i}, {col}) out of range for {}",
            self.params
        );
        (i - 1) * self.params.cols() + col
    }

    /// Entry `λ_{i,n}` with `1 <= i <= d`, `0 <= n <= N`.
    pub fn get(&self, i: usize, col: usize) -> &Rational {
        &self.entries[self.offset(i, col)]
    }

    pub fn set(&mut self, i: usize, col: usize, value: Rational) {
        let k = self.offset(i, col);
        self.entries[k] = value;
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> &[Rational] {
        let start = self.offset(i, 0);
        &self.entries[start..start + self.params.cols()]
    }

    /// Rows in `i = 1..=d` order.
    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        (1..=self.params.d()).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn column_sum(&self, col: usize) -> Rational {
        (1..=self.params.d())
            .map(|i| self.get(i, col))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// Entry-wise map, keeping the shape.
    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            params: self.params,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for Tableau {
    /// Display layout: row `i = d` on top, each row labelled.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (1..=self.params.d())
            .rev()
            .map(|i| self.row(i).iter().map(rational::format).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (k, row) in cells.iter().enumerate() {
            let i = self.params.d() - k;
            write!(f, "i={i:<3}")?;
            for c in row {
                write!(f, " {c:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The special point `λ̂`: `d + n - 2i + 1` on the parallelogram, `0` and
/// `N` on the triangles. Every reduced inequality has slack exactly `1`.
pub fn special_point(params: Params) -> Tableau {
    Tableau::from_fn(params, |i, col| match params.fixed_value(i, col) {
        Some(v) => rational::from_usize(v),
        None => rational::int((params.d() + col + 1) as i64 - 2 * i as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_range() {
        assert!(Params::new(3, 4).is_err());
        assert!(Params::new(0, 0).is_ok());
        assert_eq!(Params::new(6, 4).unwrap().dual(), Params::new(6, 2).unwrap());
    }

    #[test]
    fn shape_checked() {
        let p = Params::new(4, 2).unwrap();
        assert!(Tableau::from_int_rows(p, &[&[0, 1, 2, 3, 4]]).is_err());
        assert!(Tableau::from_int_rows(p, &[&[0, 1, 2, 3], &[0, 1, 2, 3]]).is_err());
        assert!(Tableau::from_int_rows(p, &[&[0; 5], &[0; 5]]).is_ok());
    }

    #[test]
    fn special_point_6_4() {
        let p = Params::new(6, 4).unwrap();
        let expected = Tableau::from_display_rows(
            p,
            &[
                &[0, 0, 0, 0, 1, 2, 6],
                &[0, 0, 0, 2, 3, 6, 6],
                &[0, 0, 3, 4, 6, 6, 6],
                &[0, 4, 5, 6, 6, 6, 6],
            ],
        )
        .unwrap();
        assert_eq!(special_point(p), expected);
    }

    #[test]
    fn special_point_5_2() {
        let p = Params::new(5, 2).unwrap();
        let expected =
            Tableau::from_display_rows(p, &[&[0, 0, 1, 2, 3, 5], &[0, 2, 3, 4, 5, 5]]).unwrap();
        assert_eq!(special_point(p), expected);
    }

    #[test]
    fn special_point_full_dimension_fills_triangles() {
        let p = Params::new(4, 4).unwrap();
        let t = special_point(p);
        for i in 1..=4 {
            for col in 0..=4 {
                let want = if i <= col { 4 } else { 0 };
                assert_eq!(t.get(i, col), &rational::int(want));
            }
        }
    }

    #[test]
    fn open_positions_count() {
        for n in 1..9 {
            for d in 1..n {
                let p = Params::new(n, d).unwrap();
                assert_eq!(p.open_positions().len(), d * (n - d));
            }
        }
    }

    #[test]
    fn display_labels_rows() {
        let p = Params::new(2, 1).unwrap();
        let s = special_point(p).to_string();
        assert_eq!(s, "i=1   0 1 2\n");
    }
}
