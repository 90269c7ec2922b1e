//! Points of the affine hull violating exactly one reduced inequality.
//!
//! Every candidate starts at `λ̂`, where all reduced slacks are `1`, and adds
//! a small integer perturbation with zero column sums on open entries:
//!
//! - horizontal `(i, n)`, `i >= 2`: `+1, -1` at `(i, n), (i, n+1)` and
//!   `-1, +1` at `(i-1, n), (i-1, n+1)`;
//! - diagonal `(i, n)`: `+1, +1` at `(i, n-1), (i, n)` and `-1, -1` at
//!   `(i-1, n-1), (i-1, n)`;
//! - lower bound, `d = 2`: `-2, -1` at `(d, d), (d, d+1)` and `+2, +1` at
//!   `(d-1, d), (d-1, d+1)`;
//! - lower bound, `d >= 3`: `-2` at `(d, d)` and `+1` at `(d-1, d)`,
//!   `(d-2, d)`.
//!
//! Targets the patterns do not reach directly are handled through `Φ` and
//! `Ψ`, which carry reduced inequalities to reduced inequalities with equal
//! slack. A bounded search over free coordinates is the last resort.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::condition::{reduced_inequalities, superfluous_conditions, ConditionId, ConditionKind};
use crate::error::{Error, Result};
use crate::geometry::hrep::{HRep, Variant};
use crate::maps::{phi, phi_condition, psi, psi_condition};
use crate::rational::{self, Rational};
use crate::tableau::{special_point, Params, Tableau};
use crate::validate::validate_reduced;

/// How a witness was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Pattern,
    PhiTransport,
    PsiTransport,
    Search,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pattern => "pattern",
            Self::PhiTransport => "phi-transport",
            Self::PsiTransport => "psi-transport",
            Self::Search => "search",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tableau: Tableau,
    pub strategy: Strategy,
}

/// Search bounds for the last-resort perturbation search.
const SEARCH_VALUES: [i64; 4] = [-2, -1, 1, 2];
const SEARCH_MAX_ENTRIES: usize = 6;

pub fn witness_point(p: Params, target: ConditionId) -> Result<Tableau> {
    witness(p, target).map(|w| w.tableau)
}

pub fn witness(p: Params, target: ConditionId) -> Result<Witness> {
    let (n, d) = (p.n(), p.d());
    if n < 5 || d < 2 || d + 2 > n {
        return Err(Error::OutOfRange {
            operation: "witness_point",
            n,
            d,
        });
    }
    if !reduced_inequalities(p).iter().any(|c| c.id == target) {
        return Err(Error::UnknownCondition(target));
    }
    if superfluous_conditions(p).contains(&target) {
        return Err(Error::SuperfluousCondition(target));
    }
    if let Some(t) = pattern(p, target) {
        return Ok(Witness {
            tableau: t,
            strategy: Strategy::Pattern,
        });
    }
    if let Some(t) = via_phi(p, target) {
        return Ok(Witness {
            tableau: t,
            strategy: Strategy::PhiTransport,
        });
    }
    if let Some(t) = via_psi(p, target) {
        return Ok(Witness {
            tableau: t,
            strategy: Strategy::PsiTransport,
        });
    }
    if let Some(t) = search(p, target) {
        return Ok(Witness {
            tableau: t,
            strategy: Strategy::Search,
        });
    }
    Err(Error::WitnessNotFound(target))
}

/// True when `target` is the only reduced-system violation of `t`.
pub fn violates_exactly(t: &Tableau, target: ConditionId) -> bool {
    validate_reduced(t).violated_ids() == [target]
}

fn perturb(p: Params, moves: &[((usize, usize), i64)]) -> Option<Tableau> {
    if moves.iter().any(|&((i, col), _)| i == 0 || i > p.d() || !p.is_open(i, col)) {
        return None;
    }
    let mut t = special_point(p);
    for &((i, col), delta) in moves {
        let v = t.get(i, col) + rational::int(delta);
        t.set(i, col, v);
    }
    Some(t)
}

fn pattern_moves(p: Params, target: ConditionId) -> Option<Vec<((usize, usize), i64)>> {
    let d = p.d();
    match (target.kind, target.i, target.n) {
        (ConditionKind::Horizontal, Some(i), Some(n)) if i >= 2 => Some(vec![
            ((i, n), 1),
            ((i, n + 1), -1),
            ((i - 1, n), -1),
            ((i - 1, n + 1), 1),
        ]),
        (ConditionKind::Diagonal, Some(i), Some(n)) if n >= 1 => Some(vec![
            ((i, n - 1), 1),
            ((i, n), 1),
            ((i - 1, n - 1), -1),
            ((i - 1, n), -1),
        ]),
        (ConditionKind::LowerBound, _, _) if d == 2 => Some(vec![
            ((d, d), -2),
            ((d, d + 1), -1),
            ((d - 1, d), 2),
            ((d - 1, d + 1), 1),
        ]),
        (ConditionKind::LowerBound, _, _) if d >= 3 => {
            Some(vec![((d, d), -2), ((d - 1, d), 1), ((d - 2, d), 1)])
        }
        _ => None,
    }
}

fn pattern(p: Params, target: ConditionId) -> Option<Tableau> {
    let t = perturb(p, &pattern_moves(p, target)?)?;
    violates_exactly(&t, target).then_some(t)
}

fn via_phi(p: Params, target: ConditionId) -> Option<Tableau> {
    let mirrored = phi_condition(p, target);
    let t = phi(&pattern(p, mirrored)?);
    violates_exactly(&t, target).then_some(t)
}

fn via_psi(p: Params, target: ConditionId) -> Option<Tableau> {
    let dual = p.dual();
    // The dual inequality that Ψ_{N,N-d} carries back onto `target`.
    let source = reduced_inequalities(dual)
        .into_iter()
        .map(|c| c.id)
        .find(|&id| psi_condition(dual, id) == Some(target))?;
    let t = pattern(dual, source).or_else(|| via_phi(dual, source))?;
    let t = psi(&t).ok()?;
    violates_exactly(&t, target).then_some(t)
}

fn search(p: Params, target: ConditionId) -> Option<Tableau> {
    let h = HRep::new(p, Variant::FullReduced).ok()?;
    let base = h.coordinates(&special_point(p)).ok()?;
    for size in 1..=SEARCH_MAX_ENTRIES.min(base.len()) {
        for vars in (0..base.len()).combinations(size) {
            for deltas in std::iter::repeat_n(SEARCH_VALUES, size).multi_cartesian_product() {
                let mut x: Vec<Rational> = base.clone();
                for (&k, &v) in vars.iter().zip(&deltas) {
                    x[k] += rational::int(v);
                }
                let t = h.lift(&x);
                if violates_exactly(&t, target) {
                    return Some(t);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_two(rows: [&[i64]; 2]) -> Tableau {
        Tableau::from_display_rows(Params::new(5, 2).unwrap(), &rows).unwrap()
    }

    #[test]
    fn reproduces_five_two_points() {
        let p = Params::new(5, 2).unwrap();
        let cases = [
            (ConditionId::lower_bound(p), five_two([&[0, 0, -1, 1, 3, 5], &[0, 2, 5, 5, 5, 5]])),
            (ConditionId::horizontal(2, 2), five_two([&[0, 0, 2, 1, 3, 5], &[0, 2, 2, 5, 5, 5]])),
            (ConditionId::diagonal(2, 3), five_two([&[0, 0, 2, 3, 3, 5], &[0, 2, 2, 3, 5, 5]])),
            (ConditionId::horizontal(1, 2), five_two([&[0, 0, 0, 3, 3, 5], &[0, 2, 4, 3, 5, 5]])),
            (ConditionId::upper_bound(p), five_two([&[0, 0, 0, 0, 3, 5], &[0, 2, 4, 6, 5, 5]])),
        ];
        for (target, expected) in cases {
            assert_eq!(witness_point(p, target).unwrap(), expected, "{target}");
        }
    }

    #[test]
    fn rejects_superfluous_and_unknown() {
        let p = Params::new(6, 3).unwrap();
        for id in superfluous_conditions(p) {
            assert!(matches!(witness_point(p, id), Err(Error::SuperfluousCondition(_))));
        }
        assert!(matches!(
            witness_point(p, ConditionId::horizontal(1, 5)),
            Err(Error::UnknownCondition(_))
        ));
        assert!(matches!(
            witness_point(Params::new(4, 2).unwrap(), ConditionId::horizontal(2, 2)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn every_facet_has_a_structured_witness() {
        for n in 5..11 {
            for d in 2..=n - 2 {
                let p = Params::new(n, d).unwrap();
                let skip = superfluous_conditions(p);
                for c in reduced_inequalities(p) {
                    if skip.contains(&c.id) {
                        continue;
                    }
                    let w = witness(p, c.id).unwrap();
                    assert!(violates_exactly(&w.tableau, c.id));
                    assert_ne!(w.strategy, Strategy::Search, "({n},{d}) {}", c.id);
                }
            }
        }
    }
}
