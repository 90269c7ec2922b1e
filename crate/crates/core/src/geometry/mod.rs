//! Dimension and facet counts, the H-representation over free coordinates,
//! facet witnesses, vertices and samplers.

pub mod hrep;
pub mod sample;
pub mod vertices;
pub mod witness;

use crate::tableau::Params;

pub use hrep::{HRep, HRepJson, Inequality, Variant};
pub use sample::{sample_affine_hull, sample_interior};
pub use vertices::{enumerate_vertices, Vertex, VertexJson};
pub use witness::{witness, witness_point, Strategy, Witness};

/// `(d-1)(N-d-1)`, and `0` for `d ∈ {0, N}`.
pub fn dimension(p: Params) -> usize {
    let (n, d) = (p.n(), p.d());
    if d == 0 || d == n {
        0
    } else {
        (d - 1) * (n - d - 1)
    }
}

/// `d(N-d-1) + (N-d)(d-1) - 2` for `2 <= d <= N-2`, otherwise `0`.
pub fn facet_count(p: Params) -> usize {
    let (n, d) = (p.n(), p.d());
    if d < 2 || d + 2 > n {
        0
    } else {
        d * (n - d - 1) + (n - d) * (d - 1) - 2
    }
}
