//! The affine involution `Φ` of `Λ_{N,d}` and the affine isomorphism
//! `Ψ: aff(Λ_{N,d}) -> aff(Λ_{N,N-d})`.
//!
//! `Φ(λ)_{i,n} = N - λ_{d-i+1, N-n}` rotates the tableau by a half turn and
//! complements every entry in `N`. `Ψ` swaps rows and diagonals of the
//! parallelogram of open entries:
//! `Ψ(λ)_{i,n} = λ_{d+i-n, N-n}` for `i <= n <= d+i-1`, `0` for `n < i` and
//! `N` for `n > d+i-1`.

use crate::condition::{ConditionId, ConditionKind};
use crate::error::{Error, Result};
use crate::rational;
use crate::tableau::{Params, Tableau};
use crate::validate::affine_hull_violation;

/// Source position of `Φ(λ)_{i,n}`: the entry `λ_{d-i+1, N-n}`.
pub fn phi_source(params: Params, i: usize, col: usize) -> (usize, usize) {
    (params.d() + 1 - i, params.n() - col)
}

/// Where `Ψ_{N,d}(λ)_{i,n}` comes from; `(i, n)` indexes the image
/// tableau for `(N, N-d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsiSource {
    Zero,
    Full,
    Entry(usize, usize),
}

pub fn psi_source(params: Params, i: usize, col: usize) -> PsiSource {
    let d = params.d();
    if col < i {
        PsiSource::Zero
    } else if col + 1 > d + i {
        PsiSource::Full
    } else {
        PsiSource::Entry(d + i - col, params.n() - col)
    }
}

/// `Φ_{N,d}`, defined on every `d x (N+1)` matrix.
pub fn phi(t: &Tableau) -> Tableau {
    let params = t.params();
    let n = rational::from_usize(params.n());
    Tableau::from_fn(params, |i, col| {
        let (si, sc) = phi_source(params, i, col);
        &n - t.get(si, sc)
    })
}

/// `Ψ_{N,d}`; rejects tableaux outside the affine hull.
pub fn psi(t: &Tableau) -> Result<Tableau> {
    if let Some(id) = affine_hull_violation(t) {
        return Err(Error::NotInAffineHull(format!("violates {id}")));
    }
    Ok(psi_unchecked(t))
}

fn psi_unchecked(t: &Tableau) -> Tableau {
    let params = t.params();
    let image = params.dual();
    Tableau::from_fn(image, |i, col| match psi_source(params, i, col) {
        PsiSource::Zero => rational::int(0),
        PsiSource::Full => rational::from_usize(params.n()),
        PsiSource::Entry(si, sc) => t.get(si, sc).clone(),
    })
}

/// Checks `Ψ_{N,N-d}∘Ψ_{N,d} = id`, `Φ∘Φ = id` and
/// `Φ_{N,N-d}∘Ψ_{N,d} = Ψ_{N,d}∘Φ_{N,d}` exactly on every sample.
pub fn check_identities(params: Params, samples: &[Tableau]) -> Result<bool> {
    for t in samples {
        if t.params() != params {
            return Err(Error::ShapeMismatch {
                expected_rows: params.rows(),
                expected_cols: params.cols(),
                found: format!("a tableau for {}", t.params()),
            });
        }
        let image = psi(t)?;
        if psi(&image)? != *t {
            return Ok(false);
        }
        if phi(&phi(t)) != *t {
            return Ok(false);
        }
        if phi(&image) != psi(&phi(t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The condition of `Λ_{N,d}` whose slack at `Φ(λ)` equals the slack of `id`
/// at `λ`.
pub fn phi_condition(params: Params, id: ConditionId) -> ConditionId {
    let (n, d) = (params.n(), params.d());
    use ConditionKind::*;
    match (id.kind, id.i, id.n) {
        (Horizontal, Some(i), Some(c)) => ConditionId::horizontal(d + 1 - i, n - c - 1),
        (Diagonal, Some(i), Some(c)) => ConditionId::diagonal(d + 2 - i, n + 1 - c),
        (LowerBound, _, _) => ConditionId::upper_bound(params),
        (UpperBound, _, _) => ConditionId::lower_bound(params),
        (ZeroTriangle, Some(i), Some(c)) => ConditionId::at(FullTriangle, d + 1 - i, n - c),
        (FullTriangle, Some(i), Some(c)) => ConditionId::at(ZeroTriangle, d + 1 - i, n - c),
        (FirstColumn, Some(i), _) => ConditionId::at(LastColumn, d + 1 - i, n),
        (LastColumn, Some(i), _) => ConditionId::at(FirstColumn, d + 1 - i, 0),
        (ColumnSum, _, Some(c)) => ConditionId::column_sum(n - c),
        _ => id,
    }
}

/// The reduced-system inequality of `Λ_{N,N-d}` whose slack at `Ψ(λ)`
/// equals the slack of `id` at `λ`. Rows and diagonals trade places; the
/// bounds map to bounds.
pub fn psi_condition(params: Params, id: ConditionId) -> Option<ConditionId> {
    let (n, d) = (params.n(), params.d());
    let image = params.dual();
    use ConditionKind::*;
    match (id.kind, id.i, id.n) {
        (Horizontal, Some(j), Some(m)) => Some(ConditionId::diagonal(j + n - m - d, n - m)),
        (Diagonal, Some(j), Some(m)) => Some(ConditionId::horizontal(j + n - m - d, n - m)),
        (LowerBound, _, _) => Some(ConditionId::lower_bound(image)),
        (UpperBound, _, _) => Some(ConditionId::upper_bound(image)),
        _ => None,
    }
}

/// Entry-wise `Φ` for any scalar type with a complement in `N`.
pub fn phi_generic<T: Clone>(
    params: Params,
    get: impl Fn(usize, usize) -> T,
    complement: impl Fn(T) -> T,
) -> Vec<Vec<T>> {
    (1..=params.d())
        .map(|i| {
            (0..=params.n())
                .map(|col| {
                    let (si, sc) = phi_source(params, i, col);
                    complement(get(si, sc))
                })
                .collect()
        })
        .collect()
}

/// Entry-wise `Ψ` for any scalar type; `zero` and `full` fill the triangles.
pub fn psi_generic<T: Clone>(
    params: Params,
    get: impl Fn(usize, usize) -> T,
    zero: T,
    full: T,
) -> Vec<Vec<T>> {
    let image = params.dual();
    (1..=image.d())
        .map(|i| {
            (0..=image.n())
                .map(|col| match psi_source(params, i, col) {
                    PsiSource::Zero => zero.clone(),
                    PsiSource::Full => full.clone(),
                    PsiSource::Entry(si, sc) => get(si, sc),
                })
                .collect()
        })
        .collect()
}
