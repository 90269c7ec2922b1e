//! Exact arithmetic for the polytope `Λ_{N,d}` of eigensteps of equal norm
//! tight frames with `‖f_n‖² = d`, together with the frame-side operations
//! whose eigensteps realize the polytope's symmetries.

pub mod condition;
pub mod error;
pub mod frames;
pub mod geometry;
pub mod json;
pub mod linalg;
pub mod maps;
pub mod oracle;
pub mod rational;
pub mod tableau;
pub mod validate;

pub use condition::{condition_list, ConditionId, ConditionKind, System};
pub use error::{Error, Result};
pub use geometry::{
    dimension, enumerate_vertices, facet_count, sample_interior, witness_point, HRep, Variant,
    Vertex,
};
pub use maps::{check_identities, phi, psi};
pub use oracle::{dimension_oracle, irredundant_count, lp_feasible, LpResult, LpStatus};
pub use rational::Rational;
pub use tableau::{special_point, Params, Tableau};
pub use validate::{in_affine_hull, validate_full, validate_reduced, ValidationReport};
