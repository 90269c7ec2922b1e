//! Vertex enumeration for small instances by exact solves over subsets of
//! facet inequalities.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::condition::{reduced_inequalities, ConditionId};
use crate::error::{Error, Result};
use crate::geometry::dimension;
use crate::geometry::hrep::{HRep, Variant};
use crate::json::TableauJson;
use crate::linalg::solve_square;
use crate::tableau::{special_point, Params, Tableau};

pub const MAX_DIMENSION: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub tableau: Tableau,
    /// Reduced-system inequalities with zero slack.
    pub tight_conditions: Vec<ConditionId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub tableau: TableauJson,
    pub tight: Vec<ConditionId>,
}

impl From<&Vertex> for VertexJson {
    fn from(v: &Vertex) -> Self {
        Self {
            tableau: TableauJson::from(&v.tableau),
            tight: v.tight_conditions.clone(),
        }
    }
}

fn tight_at(t: &Tableau) -> Vec<ConditionId> {
    reduced_inequalities(t.params())
        .into_iter()
        .filter(|c| c.slack(t).is_zero())
        .map(|c| c.id)
        .collect()
}

/// All vertices, sorted lexicographically by entries. Fails when the
/// dimension exceeds [`MAX_DIMENSION`] or more than `limit` vertices exist.
pub fn enumerate_vertices(p: Params, limit: usize) -> Result<Vec<Vertex>> {
    let dim = dimension(p);
    if dim > MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: dim,
            max: MAX_DIMENSION,
        });
    }
    if dim == 0 {
        if limit == 0 {
            return Err(Error::LimitExceeded(limit));
        }
        let t = special_point(p);
        return Ok(vec![Vertex {
            tight_conditions: tight_at(&t),
            tableau: t,
        }]);
    }
    let h = HRep::new(p, Variant::NonRedundant)?;
    let mut found: Vec<Vec<_>> = Vec::new();
    for subset in (0..h.inequalities.len()).combinations(dim) {
        let a: Vec<_> = subset.iter().map(|&k| h.inequalities[k].coeffs.clone()).collect();
        let b: Vec<_> = subset.iter().map(|&k| h.inequalities[k].rhs.clone()).collect();
        let Some(x) = solve_square(&a, &b) else {
            continue;
        };
        if h.contains_point(&x) && !found.contains(&x) {
            if found.len() == limit {
                return Err(Error::LimitExceeded(limit));
            }
            found.push(x);
        }
    }
    let mut vertices: Vec<Vertex> = found
        .iter()
        .map(|x| {
            let t = h.lift(x);
            Vertex {
                tight_conditions: tight_at(&t),
                tableau: t,
            }
        })
        .collect();
    vertices.sort_by(|a, b| a.tableau.entries().cmp(b.tableau.entries()));
    Ok(vertices)
}
