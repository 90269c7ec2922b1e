use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::condition::{conditions, ConditionId, System};
use crate::rational::Rational;
use crate::tableau::Tableau;

/// Result of checking a tableau against one of the two systems.
///
/// Violation amounts are positive: `|lhs - rhs|` for equalities, `-slack`
/// for inequalities. Every inequality is listed in `slacks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<(ConditionId, Rational)>,
    pub slacks: Vec<(ConditionId, Rational)>,
}

impl ValidationReport {
    pub fn violated_ids(&self) -> Vec<ConditionId> {
        self.violations.iter().map(|(id, _)| *id).collect()
    }

    pub fn slack(&self, id: &ConditionId) -> Option<&Rational> {
        self.slacks.iter().find(|(c, _)| c == id).map(|(_, s)| s)
    }
}

fn validate(t: &Tableau, system: System) -> ValidationReport {
    let mut violations = Vec::new();
    let mut slacks = Vec::new();
    for cond in conditions(t.params(), system) {
        let slack = cond.slack(t);
        if cond.is_equality() {
            if !slack.is_zero() {
                violations.push((cond.id, slack.abs()));
            }
        } else {
            if slack.is_negative() {
                violations.push((cond.id, -slack.clone()));
            }
            slacks.push((cond.id, slack));
        }
    }
    ValidationReport {
        valid: violations.is_empty(),
        violations,
        slacks,
    }
}

/// Checks `t` against the definitional system; valid iff `t ∈ Λ_{N,d}`.
pub fn validate_full(t: &Tableau) -> ValidationReport {
    validate(t, System::Full)
}

/// Checks `t` against the reduced triangle system. Agrees with
/// [`validate_full`] on validity.
pub fn validate_reduced(t: &Tableau) -> ValidationReport {
    validate(t, System::Reduced)
}

pub fn validate_with(t: &Tableau, system: System) -> ValidationReport {
    validate(t, system)
}

/// Whether `t` satisfies the triangle and column-sum equalities, i.e. lies
/// in the affine hull of `Λ_{N,d}`.
pub fn in_affine_hull(t: &Tableau) -> bool {
    conditions(t.params(), System::Reduced)
        .iter()
        .filter(|c| c.is_equality())
        .all(|c| c.slack(t).is_zero())
}

/// First equality of the affine hull that `t` violates, if any.
pub(crate) fn affine_hull_violation(t: &Tableau) -> Option<ConditionId> {
    conditions(t.params(), System::Reduced)
        .into_iter()
        .find(|c| c.is_equality() && !c.slack(t).is_zero())
        .map(|c| c.id)
}

/// JSON shape of a [`ValidationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub valid: bool,
    pub violations: Vec<Entry>,
    pub slacks: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub id: ConditionId,
    pub value: String,
}

impl From<&ValidationReport> for ReportJson {
    fn from(r: &ValidationReport) -> Self {
        let conv = |v: &[(ConditionId, Rational)]| {
            v.iter()
                .map(|(id, x)| Entry {
                    id: *id,
                    value: crate::rational::format(x),
                })
                .collect()
        };
        Self {
            valid: r.valid,
            violations: conv(&r.violations),
            slacks: conv(&r.slacks),
        }
    }
}
