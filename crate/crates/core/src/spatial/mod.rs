//! Straight-line embeddings of complete graphs and exact linking numbers.

pub(crate) mod arith;
pub mod cycle;
pub mod embedding;
pub mod gauss;
pub mod linking;
pub mod projection;

pub use cycle::{chain_add, chain_as_cycle, chain_of, chain_sum, fuse, CycleError, OrientedChain, OrientedCycle};
pub use embedding::{validate_embedding, Embedding, Point3, Violation};
pub use gauss::gauss_estimate;
pub use linking::{
    crossing_diagram, linking_number, linking_number_in, Crossing, CrossingDiagram, LinkError, Linker, Over,
};
pub use projection::{
    check_generic, direction_candidates, generic_direction, generic_direction_capped, Degeneracy, DirectionError,
    ProjectionDirection,
};
