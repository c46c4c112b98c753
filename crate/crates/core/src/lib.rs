//! Exact linking numbers in straight-line embeddings of complete graphs, and
//! constructive engines that find links with prescribed linking numbers
//! (multiples of 2^r, multiples of 3, all-even multi-component links), each
//! emitting a certificate that can be re-checked from the coordinates alone.

pub mod spatial;

pub use spatial::{Embedding, OrientedCycle, Point3};
pub mod constructions;
pub mod cycles;
pub mod harness;
pub mod sequences;
