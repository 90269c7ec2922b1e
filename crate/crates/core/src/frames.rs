//! Real frames in floating point: eigensteps, reversal, Naimark complements
//! and numerical checks of the correspondences with `Φ` and `Ψ`.
//!
//! Frames are `d x N` matrices whose columns are the frame vectors. An equal
//! norm tight frame here has `‖f_n‖² = d` and `FF* = N·I_d`.

use std::io::{Read, Write};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{phi_generic, psi_generic};
use crate::rational;
use crate::tableau::{Params, Tableau};

pub const CONSTRUCTION_TOL: f64 = 1e-9;
pub const CORRESPONDENCE_TOL: f64 = 1e-8;
/// Candidates shorter than this are skipped while completing a basis.
const DEPENDENCE_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct FrameMatrix {
    m: DMatrix<f64>,
}

impl FrameMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected_rows: d,
                expected_cols: n,
                found: format!("a row of length {}", bad.len()),
            });
        }
        Self::new(DMatrix::from_fn(d, n, |r, c| rows[r][c]))
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.m.nrows()
    }

    /// Number of frame vectors.
    pub fn n(&self) -> usize {
        self.m.ncols()
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.n(), self.d())
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.m.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    /// `d` rows of `N` decimals, no header.
    pub fn read_csv(reader: impl Read, delimiter: u8) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .delimiter(delimiter)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Format(e.to_string()))?;
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| Error::Format(format!("not a number: {f:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    pub fn write_csv(&self, writer: impl Write, delimiter: u8) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .delimiter(delimiter)
            .from_writer(writer);
        for row in self.m.row_iter() {
            w.write_record(row.iter().map(|v| format!("{v:?}")))
                .map_err(|e| Error::Format(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Format(e.to_string()))
    }
}

/// A `d x (N+1)` tableau of reals; entry `(i, n)` is the `i`-th largest
/// eigenvalue of the `n`-th partial frame operator.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatTableau {
    pub params: Params,
    entries: Vec<f64>,
    pub tol: f64,
}

impl FloatTableau {
    pub fn from_rows(params: Params, rows: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        if rows.len() != params.rows() || rows.iter().any(|r| r.len() != params.cols()) {
            return Err(Error::ShapeMismatch {
                expected_rows: params.rows(),
                expected_cols: params.cols(),
                found: format!(
                    "{} rows of lengths {:?}",
                    rows.len(),
                    rows.iter().map(Vec::len).collect::<Vec<_>>()
                ),
            });
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { params, entries, tol })
    }

    pub fn from_tableau(t: &Tableau, tol: f64) -> Self {
        Self {
            params: t.params(),
            entries: t.entries().iter().map(rational::to_f64).collect(),
            tol,
        }
    }

    pub fn get(&self, i: usize, col: usize) -> f64 {
        self.entries[(i - 1) * self.params.cols() + col]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries
            .chunks(self.params.cols().max(1))
            .take(self.params.rows())
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn column_sum(&self, col: usize) -> f64 {
        (1..=self.params.d()).map(|i| self.get(i, col)).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.params, other.params, "tableau shapes differ");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `λ_{i+1,n} <= λ_{i+1,n+1} <= λ_{i,n} <= λ_{i,n+1}` within `tol`.
    pub fn interlaces(&self, tol: f64) -> bool {
        let (n, d) = (self.params.n(), self.params.d());
        (0..n).all(|col| {
            (1..=d).all(|i| {
                let ok_row = self.get(i, col) <= self.get(i, col + 1) + tol;
                let ok_diag = i == d || self.get(i + 1, col + 1) <= self.get(i, col) + tol;
                ok_row && ok_diag
            })
        })
    }

    fn mapped(&self, params: Params, rows: Vec<Vec<f64>>) -> Self {
        Self {
            params,
            entries: rows.into_iter().flatten().collect(),
            tol: self.tol,
        }
    }

    /// `Φ` applied entry-wise.
    pub fn phi(&self) -> Self {
        let n = self.params.n() as f64;
        let rows = phi_generic(self.params, |i, c| self.get(i, c), |v| n - v);
        self.mapped(self.params, rows)
    }

    /// `Ψ` applied entry-wise; triangle entries become exactly `0` and `N`.
    pub fn psi(&self) -> Self {
        let rows = psi_generic(self.params, |i, c| self.get(i, c), 0.0, self.params.n() as f64);
        self.mapped(self.params.dual(), rows)
    }
}

/// `{"N", "d", "rows": [[number]], "tol"}`, rows listed `i = 1..=d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatTableauJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub rows: Vec<Vec<f64>>,
    pub tol: f64,
}

impl From<&FloatTableau> for FloatTableauJson {
    fn from(t: &FloatTableau) -> Self {
        Self {
            n: t.params.n(),
            d: t.params.d(),
            rows: t.rows(),
            tol: t.tol,
        }
    }
}

impl TryFrom<&FloatTableauJson> for FloatTableau {
    type Error = Error;

    fn try_from(j: &FloatTableauJson) -> Result<Self> {
        FloatTableau::from_rows(Params::new(j.n, j.d)?, j.rows.clone(), j.tol)
    }
}

/// `FF* = Σ f_n f_n*`.
pub fn frame_operator(f: &FrameMatrix) -> DMatrix<f64> {
    &f.m * f.m.transpose()
}

/// Largest deviation from `‖f_n‖² = d` and `FF* = N·I_d`.
pub fn tightness_deviation(f: &FrameMatrix) -> f64 {
    let (d, n) = (f.d() as f64, f.n() as f64);
    let norms = f
        .m
        .column_iter()
        .map(|c| (c.norm_squared() - d).abs())
        .fold(0.0, f64::max);
    let op = frame_operator(f) - DMatrix::<f64>::identity(f.d(), f.d()) * n;
    norms.max(op.amax())
}

pub fn is_equal_norm_tight(f: &FrameMatrix, tol: f64) -> bool {
    tightness_deviation(f) <= tol
}

fn require_tight(f: &FrameMatrix, tol: f64) -> Result<()> {
    let deviation = tightness_deviation(f);
    if deviation <= tol {
        Ok(())
    } else {
        Err(Error::NotTight { tol, deviation })
    }
}

/// Spectra of the partial frame operators `F_n F_n*`, `n = 0..=N`, each
/// sorted non-increasingly.
pub fn eigensteps_of_frame(f: &FrameMatrix) -> Result<FloatTableau> {
    let params = f.params()?;
    let (d, n) = (f.d(), f.n());
    let mut rows = vec![vec![0.0; n + 1]; d];
    if d == 0 {
        return FloatTableau::from_rows(params, rows, CORRESPONDENCE_TOL);
    }
    let mut partial = DMatrix::<f64>::zeros(d, d);
    for col in 1..=n {
        let v = f.m.column(col - 1);
        partial += &v * v.transpose();
        let mut eig: Vec<f64> = SymmetricEigen::new(partial.clone()).eigenvalues.iter().copied().collect();
        if eig.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        eig.sort_by(|a, b| b.total_cmp(a));
        for (i, e) in eig.into_iter().enumerate() {
            rows[i][col] = e;
        }
    }
    FloatTableau::from_rows(params, rows, CORRESPONDENCE_TOL)
}

/// Frame vectors in reverse order.
pub fn reverse_frame(f: &FrameMatrix) -> FrameMatrix {
    let n = f.n();
    FrameMatrix {
        m: DMatrix::from_fn(f.d(), n, |r, c| f.m[(r, n - 1 - c)]),
    }
}

/// A `(N-d) x N` frame `G` with `F*F + G*G = N·I_N`. The rows of `F/√N` are
/// completed to an orthonormal basis of `ℝ^N` by Gram-Schmidt over
/// `e_1, ..., e_N` in order.
pub fn naimark_complement(f: &FrameMatrix, tol: f64) -> Result<FrameMatrix> {
    require_tight(f, tol)?;
    let (d, n) = (f.d(), f.n());
    let scale = (n as f64).sqrt();
    let mut basis: Vec<nalgebra::DVector<f64>> =
        f.m.row_iter().map(|r| r.transpose() / scale).collect();
    let mut added = Vec::with_capacity(n - d);
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = nalgebra::DVector::<f64>::zeros(n);
        v[k] = 1.0;
        // Two passes keep the result orthogonal to working precision.
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&v);
                v -= b * c;
            }
        }
        let norm = v.norm();
        if norm < DEPENDENCE_THRESHOLD {
            continue;
        }
        v /= norm;
        basis.push(v.clone());
        added.push(v);
    }
    let g = DMatrix::from_fn(n - d, n, |r, c| added[r][c] * scale);
    FrameMatrix::new(g)
}

/// Real harmonic equal norm tight frame: `√N` times `d` orthonormal rows of
/// the real Fourier basis of `ℝ^N`. Odd `d` takes the constant row and the
/// cosine/sine pairs of frequencies `1..=(d-1)/2`; even `d` takes the pairs
/// of frequencies `1..=d/2`. `d = N` gives `√N·I_N`.
pub fn harmonic_frame(p: Params) -> Result<FrameMatrix> {
    let (n, d) = (p.n(), p.d());
    if d == 0 || n == 0 {
        return Err(Error::HarmonicUnavailable { n, d });
    }
    let scale = (n as f64).sqrt();
    let m = if d == n {
        DMatrix::<f64>::identity(n, n) * scale
    } else {
        let nf = n as f64;
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(d);
        if d % 2 == 1 {
            rows.push(vec![1.0 / scale; n]);
        }
        let pair = (2.0 / nf).sqrt();
        for k in 1..=d / 2 {
            let angle = |c: usize| 2.0 * std::f64::consts::PI * (k * c) as f64 / nf;
            rows.push((0..n).map(|c| pair * angle(c).cos()).collect());
            rows.push((0..n).map(|c| pair * angle(c).sin()).collect());
        }
        DMatrix::from_fn(d, n, |r, c| rows[r][c] * scale)
    };
    let f = FrameMatrix::new(m)?;
    if !is_equal_norm_tight(&f, CONSTRUCTION_TOL) {
        return Err(Error::HarmonicUnavailable { n, d });
    }
    Ok(f)
}

/// Rounds every entry to the nearest rational with denominator at most
/// `denominator_bound`; returns the tableau and the largest rounding error.
pub fn snap_to_rational(ft: &FloatTableau, denominator_bound: u64) -> Result<(Tableau, f64)> {
    let p = ft.params;
    let mut max_err = 0.0_f64;
    let rows = ft
        .rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| {
                    let r = rational::limit_denominator(v, denominator_bound)?;
                    max_err = max_err.max((rational::to_f64(&r) - v).abs());
                    Ok(r)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((Tableau::from_rows(p, rows)?, max_err))
}

/// Largest entry-wise gap between `Φ(λ_F)` and `λ_{F̃}`.
pub fn phi_correspondence_error(f: &FrameMatrix, tol: f64) -> Result<f64> {
    require_tight(f, tol)?;
    let direct = eigensteps_of_frame(&reverse_frame(f))?;
    Ok(eigensteps_of_frame(f)?.phi().max_abs_diff(&direct))
}

/// Largest entry-wise gap between `Ψ(λ_F)` and `λ_{G̃}` for the Naimark
/// complement `G` of `F`.
pub fn psi_correspondence_error(f: &FrameMatrix, tol: f64) -> Result<f64> {
    let g = naimark_complement(f, tol)?;
    let direct = eigensteps_of_frame(&reverse_frame(&g))?;
    Ok(eigensteps_of_frame(f)?.psi().max_abs_diff(&direct))
}

pub fn verify_phi_correspondence(f: &FrameMatrix, tol: f64) -> Result<bool> {
    Ok(phi_correspondence_error(f, tol)? <= tol)
}

pub fn verify_psi_correspondence(f: &FrameMatrix, tol: f64) -> Result<bool> {
    Ok(psi_correspondence_error(f, tol)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableau::special_point;
    use crate::validate::validate_full;

    fn p(n: usize, d: usize) -> Params {
        Params::new(n, d).unwrap()
    }

    #[test]
    fn scaled_identity() {
        let f = harmonic_frame(p(5, 5)).unwrap();
        assert!((frame_operator(&f) - DMatrix::identity(5, 5) * 5.0).amax() < 1e-12);
        let lam = eigensteps_of_frame(&f).unwrap();
        let (snapped, _) = snap_to_rational(&lam, 1).unwrap();
        assert_eq!(snapped, special_point(p(5, 5)));
        assert!(verify_phi_correspondence(&f, 1e-12).unwrap());
        assert!(verify_psi_correspondence(&f, 1e-12).unwrap());
        assert_eq!(naimark_complement(&f, 1e-9).unwrap().d(), 0);
    }

    #[test]
    fn single_vector() {
        let f = FrameMatrix::from_rows(&[vec![1.0]]).unwrap();
        assert_eq!(frame_operator(&f)[(0, 0)], 1.0);
        assert_eq!(reverse_frame(&f), f);
        assert!(is_equal_norm_tight(&f, 1e-12));
    }

    #[test]
    fn standard_basis_not_tight() {
        let f = FrameMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(!is_equal_norm_tight(&f, 1e-9));
        assert!(matches!(naimark_complement(&f, 1e-9), Err(Error::NotTight { .. })));
    }

    #[test]
    fn harmonic_five_two() {
        let f = harmonic_frame(p(5, 2)).unwrap();
        assert!(is_equal_norm_tight(&f, 1e-9));
        let lam = eigensteps_of_frame(&f).unwrap();
        assert!((0..2).all(|i| lam.get(i + 1, 0) == 0.0));
        assert!(lam.interlaces(1e-8));
        let (snapped, err) = snap_to_rational(&lam, 1_000_000).unwrap();
        assert!(err < 1e-9);
        assert_eq!(snapped.get(2, 1), &rational::int(0));
        assert_eq!(snapped.get(1, 4), &rational::int(5));
        assert!(validate_full(&snapped).valid);
        assert!(verify_phi_correspondence(&f, 1e-8).unwrap());
        assert!(verify_psi_correspondence(&f, 1e-8).unwrap());
        let g = naimark_complement(&f, 1e-9).unwrap();
        assert_eq!((g.d(), g.n()), (3, 5));
        let gram = f.matrix().transpose() * f.matrix() + g.matrix().transpose() * g.matrix();
        assert!((gram - DMatrix::identity(5, 5) * 5.0).amax() < 1e-9);
        assert!(g.matrix().column_iter().all(|c| (c.norm_squared() - 3.0).abs() < 1e-9));
    }

    #[test]
    fn reverse_twice_is_exact() {
        let f = harmonic_frame(p(7, 3)).unwrap();
        assert_eq!(reverse_frame(&reverse_frame(&f)), f);
        let r = reverse_frame(&f);
        assert_eq!(r.matrix().column(0), f.matrix().column(6));
    }

    #[test]
    fn special_point_round_trips_through_floats() {
        let lam = special_point(p(6, 4));
        let (back, err) = snap_to_rational(&FloatTableau::from_tableau(&lam, 0.0), 1).unwrap();
        assert_eq!(back, lam);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn csv_round_trip() {
        let f = harmonic_frame(p(6, 3)).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf, b';').unwrap();
        let back = FrameMatrix::read_csv(buf.as_slice(), b';').unwrap();
        assert_eq!(back, f);
        assert!(FrameMatrix::read_csv("1,2\n3\n".as_bytes(), b',').is_err());
        assert!(FrameMatrix::read_csv("1,x\n".as_bytes(), b',').is_err());
    }

    #[test]
    fn float_tableau_json() {
        let lam = eigensteps_of_frame(&harmonic_frame(p(5, 2)).unwrap()).unwrap();
        let text = serde_json::to_string(&FloatTableauJson::from(&lam)).unwrap();
        let back: FloatTableauJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FloatTableau::try_from(&back).unwrap(), lam);
        assert!(text.contains("\"tol\""));
    }
}
