//! Hand-built embeddings with known topology.

use crate::spatial::{Embedding, OrientedCycle};

/// Vertices 0..3 form triangle A in the plane z = 0 around the origin; vertices
/// 3..6 form triangle B, which pierces A's disk once and passes outside it once.
pub fn hopf() -> (Embedding, OrientedCycle, OrientedCycle) {
    let emb = Embedding::from_i64(&[
        [5, 0, 0],
        [-5, 3, 0],
        [-5, -3, 0],
        [0, 1, 5],
        [1, -1, -5],
        [-1, 12, 1],
    ])
    .expect("hopf fixture is in general position");
    (emb, cycle(&[0, 1, 2]), cycle(&[3, 4, 5]))
}

/// Two triangles on opposite sides of the plane z = 0 whose shadows are far apart.
pub fn split_pair() -> (Embedding, OrientedCycle, OrientedCycle) {
    let emb = Embedding::from_i64(&[
        [0, 0, -3],
        [4, 1, -5],
        [1, 5, -4],
        [40, 2, 3],
        [44, 7, 6],
        [41, -3, 4],
    ])
    .expect("split fixture is in general position");
    (emb, cycle(&[0, 1, 2]), cycle(&[3, 4, 5]))
}

pub(crate) fn cycle(v: &[usize]) -> OrientedCycle {
    OrientedCycle::new(v.to_vec()).expect("fixture cycle")
}
