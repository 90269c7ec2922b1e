//! Inequality description of `Λ_{N,d}` over free coordinates of its affine
//! hull.
//!
//! The open entries form the parallelogram `i <= n <= N-d+i-1`. In each
//! interior column the open entry with the smallest row index is solved for
//! from the column sum; the remaining open entries are the free variables.
//! For `(5,2)` this leaves `(λ_{2,2}, λ_{2,3})`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::condition::{reduced_inequalities, superfluous_conditions, ConditionId};
use crate::error::{Error, Result};
use crate::json::RationalText;
use crate::linalg::dot;
use crate::rational::{self, Rational};
use crate::tableau::{Params, Tableau};
use crate::validate::affine_hull_violation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Every inequality of the reduced system.
    FullReduced,
    /// One inequality per facet.
    NonRedundant,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::FullReduced => "full-reduced",
            Self::NonRedundant => "non-redundant",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-reduced" => Ok(Self::FullReduced),
            "non-redundant" => Ok(Self::NonRedundant),
            _ => Err(Error::Format(format!("unknown variant {s:?}"))),
        }
    }
}

/// `coeffs · x <= rhs` over the free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub id: ConditionId,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Inequality {
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.rhs - dot(&self.coeffs, x)
    }
}

/// Affine expression `constant + coeffs · x` for one tableau entry.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Affine {
    coeffs: Vec<Rational>,
    constant: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub params: Params,
    pub variant: Variant,
    /// Free coordinates, row-major `(i, n)`.
    pub free_vars: Vec<(usize, usize)>,
    /// The entry solved from each interior column sum, in column order.
    pub eliminated: Vec<(usize, usize)>,
    pub inequalities: Vec<Inequality>,
    entries: Vec<Affine>,
}

impl HRep {
    pub fn new(params: Params, variant: Variant) -> Result<Self> {
        let (n, d) = (params.n(), params.d());
        let in_range = match variant {
            Variant::FullReduced => d >= 1 && d < n,
            Variant::NonRedundant => d >= 2 && d + 2 <= n,
        };
        if !in_range {
            return Err(Error::OutOfRange {
                operation: "h_representation",
                n,
                d,
            });
        }
        let (free_vars, eliminated) = coordinates(params);
        let k = free_vars.len();
        let zero = vec![Rational::zero(); k];
        let mut entries: Vec<Affine> = Vec::with_capacity(params.rows() * params.cols());
        for i in 1..=d {
            for col in 0..=n {
                let e = match params.fixed_value(i, col) {
                    Some(v) => Affine {
                        coeffs: zero.clone(),
                        constant: rational::from_usize(v),
                    },
                    None => match free_vars.iter().position(|&p| p == (i, col)) {
                        Some(idx) => {
                            let mut coeffs = zero.clone();
                            coeffs[idx] = rational::int(1);
                            Affine {
                                coeffs,
                                constant: Rational::zero(),
                            }
                        }
                        // Eliminated; filled in below once its column is known.
                        None => Affine {
                            coeffs: zero.clone(),
                            constant: Rational::zero(),
                        },
                    },
                };
                entries.push(e);
            }
        }
        let at = |i: usize, col: usize| (i - 1) * (n + 1) + col;
        for &(ei, col) in &eliminated {
            let mut coeffs = zero.clone();
            let mut constant = rational::from_usize(d * col);
            for i in (1..=d).filter(|&i| i != ei) {
                let other = &entries[at(i, col)];
                for (c, o) in coeffs.iter_mut().zip(&other.coeffs) {
                    *c -= o;
                }
                constant -= &other.constant;
            }
            entries[at(ei, col)] = Affine { coeffs, constant };
        }

        let skip: Vec<ConditionId> = match variant {
            Variant::FullReduced => Vec::new(),
            Variant::NonRedundant if n >= 5 => superfluous_conditions(params).to_vec(),
            // Λ_{4,2} is a segment; λ_{2,2} >= 0 and λ_{2,2} <= λ_{2,3} = 2
            // are its two facets, every other inequality repeats one of them.
            Variant::NonRedundant => {
                let keep = [ConditionId::lower_bound(params), ConditionId::horizontal(2, 2)];
                reduced_inequalities(params)
                    .into_iter()
                    .map(|c| c.id)
                    .filter(|id| !keep.contains(id))
                    .collect()
            }
        };
        let inequalities = reduced_inequalities(params)
            .into_iter()
            .filter(|c| !skip.contains(&c.id))
            .map(|c| {
                let mut coeffs = zero.clone();
                let mut rhs = c.rhs.clone();
                for &((i, col), w) in &c.terms {
                    let e = &entries[at(i, col)];
                    let w = rational::int(w);
                    for (a, b) in coeffs.iter_mut().zip(&e.coeffs) {
                        *a += &w * b;
                    }
                    rhs -= &w * &e.constant;
                }
                Inequality { id: c.id, coeffs, rhs }
            })
            .collect();
        Ok(Self {
            params,
            variant,
            free_vars,
            eliminated,
            inequalities,
            entries,
        })
    }

    pub fn dimension(&self) -> usize {
        self.free_vars.len()
    }

    /// Free coordinates of a tableau in the affine hull.
    pub fn coordinates(&self, t: &Tableau) -> Result<Vec<Rational>> {
        if t.params() != self.params {
            return Err(Error::ShapeMismatch {
                expected_rows: self.params.rows(),
                expected_cols: self.params.cols(),
                found: format!("a tableau for {}", t.params()),
            });
        }
        if let Some(id) = affine_hull_violation(t) {
            return Err(Error::NotInAffineHull(format!("violates {id}")));
        }
        Ok(self.free_vars.iter().map(|&(i, n)| t.get(i, n).clone()).collect())
    }

    /// The tableau of the affine hull with the given free coordinates.
    pub fn lift(&self, x: &[Rational]) -> Tableau {
        assert_eq!(x.len(), self.free_vars.len(), "coordinate count");
        let n = self.params.n();
        Tableau::from_fn(self.params, |i, col| {
            let e = &self.entries[(i - 1) * (n + 1) + col];
            &e.constant + dot(&e.coeffs, x)
        })
    }

    pub fn slacks(&self, x: &[Rational]) -> Vec<Rational> {
        self.inequalities.iter().map(|q| q.slack(x)).collect()
    }

    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|q| !q.slack(x).is_negative())
    }

    /// Membership of a tableau; `false` off the affine hull.
    pub fn contains(&self, t: &Tableau) -> bool {
        self.coordinates(t)
            .map(|x| self.contains_point(&x))
            .unwrap_or(false)
    }
}

/// Free and eliminated positions for `1 <= d <= N-1`.
fn coordinates(params: Params) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let eliminated: Vec<(usize, usize)> = (1..params.n())
        .filter_map(|col| {
            (1..=params.d())
                .find(|&i| params.is_open(i, col))
                .map(|i| (i, col))
        })
        .collect();
    let free = params
        .open_positions()
        .into_iter()
        .filter(|p| !eliminated.contains(p))
        .collect();
    (free, eliminated)
}

/// `{"N", "d", "variant", "free_vars": [[i, n]], "eliminated": [[i, n]],
/// "inequalities": [{"id", "coeffs", "rhs"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRepJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub variant: Variant,
    pub free_vars: Vec<[usize; 2]>,
    pub eliminated: Vec<[usize; 2]>,
    pub inequalities: Vec<InequalityJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub id: ConditionId,
    pub coeffs: Vec<RationalText>,
    pub rhs: RationalText,
}

impl From<&HRep> for HRepJson {
    fn from(h: &HRep) -> Self {
        Self {
            n: h.params.n(),
            d: h.params.d(),
            variant: h.variant,
            free_vars: h.free_vars.iter().map(|&(i, n)| [i, n]).collect(),
            eliminated: h.eliminated.iter().map(|&(i, n)| [i, n]).collect(),
            inequalities: h
                .inequalities
                .iter()
                .map(|q| InequalityJson {
                    id: q.id,
                    coeffs: q.coeffs.iter().map(RationalText::from).collect(),
                    rhs: RationalText::from(&q.rhs),
                })
                .collect(),
        }
    }
}

impl HRepJson {
    /// Rebuilds the representation and checks that the stored inequalities
    /// match it exactly.
    pub fn to_hrep(&self) -> Result<HRep> {
        let h = HRep::new(Params::new(self.n, self.d)?, self.variant)?;
        let ineqs = self
            .inequalities
            .iter()
            .map(|q| {
                Ok(Inequality {
                    id: q.id,
                    coeffs: q
                        .coeffs
                        .iter()
                        .map(RationalText::to_rational)
                        .collect::<Result<_>>()?,
                    rhs: q.rhs.to_rational()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if ineqs != h.inequalities {
            return Err(Error::Format("inequalities do not match the parameters".into()));
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::ConditionKind;
    use crate::rational::int;
    use crate::tableau::special_point;
    use crate::validate::validate_full;

    fn p(n: usize, d: usize) -> Params {
        Params::new(n, d).unwrap()
    }

    #[test]
    fn five_two_parametrization() {
        let h = HRep::new(p(5, 2), Variant::NonRedundant).unwrap();
        assert_eq!(h.free_vars, vec![(2, 2), (2, 3)]);
        assert_eq!(h.inequalities.len(), 5);
        // λ_{1,1} = 2, λ_{1,2} = 4 - λ_{2,2}, λ_{1,3} = 6 - λ_{2,3}, λ_{2,4} = 3.
        let t = h.lift(&[int(7), int(11)]);
        assert_eq!(t.get(1, 1), &int(2));
        assert_eq!(t.get(1, 2), &int(-3));
        assert_eq!(t.get(1, 3), &int(-5));
        assert_eq!(t.get(2, 4), &int(3));
        let full = HRep::new(p(5, 2), Variant::FullReduced).unwrap();
        assert_eq!(full.inequalities.len(), 9);
    }

    #[test]
    fn free_variable_count() {
        for n in 2..11 {
            for d in 1..n {
                let h = HRep::new(p(n, d), Variant::FullReduced).unwrap();
                assert_eq!(h.dimension(), (d - 1) * (n - d - 1));
                assert_eq!(h.eliminated.len(), n - 1);
            }
        }
    }

    #[test]
    fn non_redundant_count() {
        for n in 4..11 {
            for d in 2..=n - 2 {
                let h = HRep::new(p(n, d), Variant::NonRedundant).unwrap();
                assert_eq!(h.inequalities.len(), d * (n - d - 1) + (n - d) * (d - 1) - 2);
            }
        }
    }

    #[test]
    fn four_two_segment() {
        let h = HRep::new(p(4, 2), Variant::FullReduced).unwrap();
        assert_eq!(h.dimension(), 1);
        assert_eq!(h.inequalities.len(), 6);
        let nr = HRep::new(p(4, 2), Variant::NonRedundant).unwrap();
        for v in -3..7 {
            let x = [rational::ratio(v, 2)];
            assert_eq!(h.contains_point(&x), nr.contains_point(&x), "x = {v}/2");
        }
        assert!(nr.contains_point(&[int(2)]));
        assert!(!nr.contains_point(&[rational::ratio(5, 2)]));
    }

    #[test]
    fn lift_round_trips_special_point() {
        for n in 3..9 {
            for d in 1..n {
                let h = HRep::new(p(n, d), Variant::FullReduced).unwrap();
                let lam = special_point(p(n, d));
                let x = h.coordinates(&lam).unwrap();
                assert_eq!(h.lift(&x), lam);
                assert!(h.slacks(&x).iter().all(|s| *s == int(1)));
            }
        }
    }

    #[test]
    fn ranges_enforced() {
        assert!(HRep::new(p(5, 0), Variant::FullReduced).is_err());
        assert!(HRep::new(p(5, 5), Variant::FullReduced).is_err());
        assert!(HRep::new(p(5, 1), Variant::NonRedundant).is_err());
        assert!(HRep::new(p(5, 4), Variant::NonRedundant).is_err());
        assert!(HRep::new(p(5, 4), Variant::FullReduced).is_ok());
    }

    #[test]
    fn membership_matches_validation() {
        let h = HRep::new(p(6, 3), Variant::FullReduced).unwrap();
        let lam = special_point(p(6, 3));
        let base = h.coordinates(&lam).unwrap();
        for k in 0..base.len() {
            for delta in [-3, -1, 1, 3] {
                let mut x = base.clone();
                x[k] += int(delta);
                let t = h.lift(&x);
                assert_eq!(h.contains(&t), validate_full(&t).valid);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let h = HRep::new(p(6, 3), Variant::NonRedundant).unwrap();
        let text = serde_json::to_string(&HRepJson::from(&h)).unwrap();
        let back: HRepJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_hrep().unwrap(), h);
        assert!(text.contains("\"variant\":\"non-redundant\""));
        assert!(h
            .inequalities
            .iter()
            .all(|q| q.id.kind != ConditionKind::ColumnSum));
    }
}
