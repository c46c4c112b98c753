//! Engines that construct links with prescribed linking-number properties
//! inside a given straight-line embedding, each returning a re-checkable
//! [`LinkCertificate`].

pub mod certificate;
pub mod doubling;
pub mod keys;
pub mod mod3;
pub mod rings;
pub mod search;

use thiserror::Error;

use crate::cycles::{BridgeError, SelectError};
use crate::sequences::SeqError;
use crate::spatial::{CycleError, LinkError, OrientedCycle};

pub use certificate::{certify, verify_certificate, Artifact, LinkCertificate, TheoremId, VerifyError};
pub use doubling::{
    even_link, even_link_construct, even_link_size, iterated_doubling, mod2_keys, mod2_keys_size, mod2_whitehead, mod2_whitehead_size, EvenLink,
};
pub use keys::{ring_of_keys, star_recursion, BaseSearcher, KeyLink};
pub use mod3::{mod3_from_keys, mod3_keys, mod3_keys_size, mod3_two_component, pentagon_cycles, pentagon_plan};
pub use rings::{all_even, all_even_from_keys, all_even_size, three_component_mod, three_component_mod_size};
pub use search::{
    find_nonsplit_pair, find_three_component_base, find_triangle_mcycle, search_mod4, SearchBudget,
};

/// Components, case trace and artifacts of a construction, before certification.
pub type Assembled = (Vec<OrientedCycle>, Vec<String>, Vec<Artifact>);

/// Which linking numbers count as "linked" for a search or recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Nonzero,
    Odd,
}

impl Parity {
    pub fn holds(self, lk: i64) -> bool {
        match self {
            Parity::Nonzero => lk != 0,
            Parity::Odd => lk.rem_euclid(2) == 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Nonzero => "nonzero",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("insufficient vertices: need {needed}, got {got}")]
    InsufficientVertices { needed: u64, got: usize },
    #[error("budget exhausted: {what} after examining {examined} candidates")]
    BudgetExhausted { what: String, examined: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex budget violated at stage {stage}: a cycle has {got} vertices, {needed} needed")]
    VertexBudget { stage: u64, needed: usize, got: usize },
    #[error("construction step failed (falsification candidate): {0}")]
    StepFailed(String),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
}

pub(crate) fn need_vertices(vertices: &[usize], needed: u64) -> Result<(), ConstructError> {
    if (vertices.len() as u64) < needed {
        Err(ConstructError::InsufficientVertices { needed, got: vertices.len() })
    } else {
        Ok(())
    }
}

/// The `count` lowest vertices of `vertices`, ascending.
pub(crate) fn lowest(vertices: &[usize], count: usize) -> Vec<usize> {
    let mut v = vertices.to_vec();
    v.sort_unstable();
    v.dedup();
    v.truncate(count);
    v
}

pub(crate) fn to_u64(v: &num_bigint::BigUint) -> Result<u64, ConstructError> {
    use num_traits::ToPrimitive;
    v.to_u64().ok_or_else(|| ConstructError::Precondition(format!("size {v} does not fit in memory")))
}
