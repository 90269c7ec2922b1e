//! Named scalar conditions of the two defining systems.
//!
//! The *full* system is the definitional one: first/last column, every
//! column sum, every horizontal and diagonal inequality. The *reduced*
//! system replaces the column conditions by the zero- and N-triangles, keeps
//! only the interior column sums, restricts the horizontal and diagonal
//! inequalities to the parallelogram of open entries, and adds the lower
//! bound `λ_{d,d} >= 0` and upper bound `λ_{1,N-d} <= N`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::tableau::{Params, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionKind {
    FirstColumn,
    LastColumn,
    ColumnSum,
    ZeroTriangle,
    FullTriangle,
    Horizontal,
    Diagonal,
    LowerBound,
    UpperBound,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 9] = [
        Self::FirstColumn,
        Self::LastColumn,
        Self::ColumnSum,
        Self::ZeroTriangle,
        Self::FullTriangle,
        Self::Horizontal,
        Self::Diagonal,
        Self::LowerBound,
        Self::UpperBound,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::FirstColumn => "first-column",
            Self::LastColumn => "last-column",
            Self::ColumnSum => "column-sum",
            Self::ZeroTriangle => "zero-triangle",
            Self::FullTriangle => "N-triangle",
            Self::Horizontal => "horizontal",
            Self::Diagonal => "diagonal",
            Self::LowerBound => "lower-bound",
            Self::UpperBound => "upper-bound",
        }
    }

    pub fn is_equality(&self) -> bool {
        matches!(
            self,
            Self::FirstColumn
                | Self::LastColumn
                | Self::ColumnSum
                | Self::ZeroTriangle
                | Self::FullTriangle
        )
    }
}

/// Stable identifier of one scalar condition, rendered `kind:i:n` with an
/// empty field for an absent index (e.g. `column-sum::3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionId {
    pub kind: ConditionKind,
    pub i: Option<usize>,
    pub n: Option<usize>,
}

impl ConditionId {
    pub fn new(kind: ConditionKind, i: Option<usize>, n: Option<usize>) -> Self {
        Self { kind, i, n }
    }

    pub fn at(kind: ConditionKind, i: usize, n: usize) -> Self {
        Self::new(kind, Some(i), Some(n))
    }

    pub fn horizontal(i: usize, n: usize) -> Self {
        Self::at(ConditionKind::Horizontal, i, n)
    }

    pub fn diagonal(i: usize, n: usize) -> Self {
        Self::at(ConditionKind::Diagonal, i, n)
    }

    pub fn lower_bound(params: Params) -> Self {
        Self::at(ConditionKind::LowerBound, params.d(), params.d())
    }

    pub fn upper_bound(params: Params) -> Self {
        Self::at(ConditionKind::UpperBound, 1, params.n() - params.d())
    }

    pub fn column_sum(n: usize) -> Self {
        Self::new(ConditionKind::ColumnSum, None, Some(n))
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        write!(f, "{}:{}:{}", self.kind.as_str(), field(self.i), field(self.n))
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseCondition(s.to_string());
        let mut parts = s.trim().split(':');
        let (Some(kind), Some(i), Some(n), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(err());
        };
        let kind = ConditionKind::ALL
            .into_iter()
            .find(|k| k.as_str() == kind)
            .ok_or_else(err)?;
        let index = |v: &str| -> Result<Option<usize>> {
            if v.is_empty() {
                Ok(None)
            } else {
                v.parse().map(Some).map_err(|_| err())
            }
        };
        Ok(Self::new(kind, index(i)?, index(n)?))
    }
}

impl Serialize for ConditionId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConditionId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum System {
    Full,
    Reduced,
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "reduced" => Ok(Self::Reduced),
            _ => Err(Error::Format(format!("unknown system {s:?}"))),
        }
    }
}

/// `Σ coeff·λ_{i,n} (= | <=) rhs` over tableau entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCondition {
    pub id: ConditionId,
    pub terms: Vec<((usize, usize), i64)>,
    pub rhs: Rational,
}

impl LinearCondition {
    fn new(id: ConditionId, terms: Vec<((usize, usize), i64)>, rhs: Rational) -> Self {
        Self { id, terms, rhs }
    }

    fn le(id: ConditionId, small: (usize, usize), large: (usize, usize)) -> Self {
        Self::new(id, vec![(small, 1), (large, -1)], Rational::zero())
    }

    pub fn is_equality(&self) -> bool {
        self.id.kind.is_equality()
    }

    pub fn lhs(&self, t: &Tableau) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, &((i, n), c)| acc + t.get(i, n) * rational::int(c))
    }

    /// `rhs - lhs`; non-negative iff an inequality holds, zero iff an
    /// equality holds.
    pub fn slack(&self, t: &Tableau) -> Rational {
        &self.rhs - self.lhs(t)
    }
}

/// All conditions of `system` for `params`: equalities first, then
/// inequalities sorted row-major by `(i, n)`.
pub fn conditions(params: Params, system: System) -> Vec<LinearCondition> {
    let (n, d) = (params.n(), params.d());
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    let column_sum = |col: usize| {
        LinearCondition::new(
            ConditionId::column_sum(col),
            (1..=d).map(|i| ((i, col), 1)).collect(),
            rational::from_usize(d * col),
        )
    };
    match system {
        System::Full => {
            for i in 1..=d {
                eqs.push(LinearCondition::new(
                    ConditionId::at(ConditionKind::FirstColumn, i, 0),
                    vec![((i, 0), 1)],
                    Rational::zero(),
                ));
            }
            for i in 1..=d {
                eqs.push(LinearCondition::new(
                    ConditionId::at(ConditionKind::LastColumn, i, n),
                    vec![((i, n), 1)],
                    rational::from_usize(n),
                ));
            }
            eqs.extend((0..=n).map(column_sum));
            for i in 1..=d {
                for col in 0..n {
                    ineqs.push(LinearCondition::le(
                        ConditionId::horizontal(i, col),
                        (i, col),
                        (i, col + 1),
                    ));
                }
            }
            for i in 2..=d {
                for col in 1..=n {
                    ineqs.push(LinearCondition::le(
                        ConditionId::diagonal(i, col),
                        (i, col),
                        (i - 1, col - 1),
                    ));
                }
            }
        }
        System::Reduced => {
            for i in 1..=d {
                for col in 0..=n {
                    if params.in_zero_triangle(i, col) {
                        eqs.push(LinearCondition::new(
                            ConditionId::at(ConditionKind::ZeroTriangle, i, col),
                            vec![((i, col), 1)],
                            Rational::zero(),
                        ));
                    }
                }
            }
            for i in 1..=d {
                for col in 0..=n {
                    if params.in_full_triangle(i, col) {
                        eqs.push(LinearCondition::new(
                            ConditionId::at(ConditionKind::FullTriangle, i, col),
                            vec![((i, col), 1)],
                            rational::from_usize(n),
                        ));
                    }
                }
            }
            eqs.extend((1..n).map(column_sum));
            // i <= n < N - d + i - 1
            for i in 1..=d {
                for col in i..(n + i).saturating_sub(d + 1) {
                    ineqs.push(LinearCondition::le(
                        ConditionId::horizontal(i, col),
                        (i, col),
                        (i, col + 1),
                    ));
                }
            }
            // 1 < i, i <= n < N - d + i
            for i in 2..=d {
                for col in i..(n + i - d) {
                    ineqs.push(LinearCondition::le(
                        ConditionId::diagonal(i, col),
                        (i, col),
                        (i - 1, col - 1),
                    ));
                }
            }
            if !params.is_degenerate() {
                ineqs.push(LinearCondition::new(
                    ConditionId::lower_bound(params),
                    vec![((d, d), -1)],
                    Rational::zero(),
                ));
                ineqs.push(LinearCondition::new(
                    ConditionId::upper_bound(params),
                    vec![((1, n - d), 1)],
                    rational::from_usize(n),
                ));
            }
        }
    }
    ineqs.sort_by_key(|c| (c.id.i, c.id.n, c.id.kind));
    eqs.extend(ineqs);
    eqs
}

/// Identifiers of [`conditions`], in the same order.
pub fn condition_list(params: Params, system: System) -> Vec<ConditionId> {
    conditions(params, system).into_iter().map(|c| c.id).collect()
}

/// Inequalities of the reduced system only.
pub fn reduced_inequalities(params: Params) -> Vec<LinearCondition> {
    conditions(params, System::Reduced)
        .into_iter()
        .filter(|c| !c.is_equality())
        .collect()
}

/// The four inequalities between open entries that the others imply when
/// `N >= 5` and `2 <= d <= N - 2`.
pub fn superfluous_conditions(params: Params) -> [ConditionId; 4] {
    let (n, d) = (params.n(), params.d());
    [
        ConditionId::diagonal(2, 2),
        ConditionId::horizontal(1, 1),
        ConditionId::horizontal(d, n - 2),
        ConditionId::diagonal(d, n - 1),
    ]
}
