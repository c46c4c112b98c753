//! Cycle enumeration in complete graphs, bridge families between two cycles, and
//! the pigeonhole selectors that pick zero-sum blocks out of cyclic sequences.

pub mod bridge;
pub mod enumerate;
pub mod select;

pub use bridge::{build_bridge_family, choose_path_system, BridgeError, BridgeFamily, PathSystem};
pub use enumerate::{enumerate_cycles, enumerate_disjoint_tuples, cycle_count, TupleSpec};
pub use select::{
    max_block_decompose, select_zero_subsequence_mod2, zero_block_select, BlockDecomposition, BlockSelection,
    SelectError,
};
