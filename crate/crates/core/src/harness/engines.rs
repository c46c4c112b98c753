use crate::constructions::doubling::triangle_cycle_base;
use crate::constructions::keys::make_blocks;
use crate::constructions::{
    all_even, all_even_size, even_link, even_link_size, find_nonsplit_pair, find_three_component_base,
    find_triangle_mcycle, mod2_keys, mod2_keys_size, mod2_whitehead, mod2_whitehead_size, mod3_keys, mod3_keys_size,
    mod3_two_component, ring_of_keys, search_mod4, star_recursion, three_component_mod, three_component_mod_size,
    to_u64, ConstructError, LinkCertificate, Parity, SearchBudget, TheoremId,
};
use crate::sequences::{alpha, alpha_prime};
use crate::spatial::Linker;

/// Smallest complete graph on which the engine for `id` is guaranteed to succeed.
pub fn vertex_requirement(id: TheoremId) -> Result<u64, ConstructError> {
    Ok(match id {
        TheoremId::NonsplitPair | TheoremId::NonsplitPairOdd => 6,
        TheoremId::TriangleMcycle => 6,
        TheoremId::ThreeComponentOdd | TheoremId::Mod4 => 10,
        TheoremId::EvenLink { r } => even_link_size(r)?,
        TheoremId::RingOfKeys { n } | TheoremId::RingOfKeysOdd { n } => to_u64(&alpha(n as u64)?)?,
        TheoremId::Star { n } => 7 * to_u64(&alpha_prime(n as u64)?)?,
        TheoremId::Mod2Whitehead { r } => mod2_whitehead_size(r)?,
        TheoremId::Mod2Keys { n, r } => mod2_keys_size(n as usize, r)?,
        TheoremId::Mod2Rings { r } => three_component_mod_size(r)?,
        TheoremId::AllEven { n } => all_even_size(n)?,
        TheoremId::Mod3 => mod3_keys_size(1)?,
        TheoremId::Mod3Keys { n } => mod3_keys_size(n as usize)?,
    })
}

/// Runs the engine for `id` on all vertices of the linker's embedding.
///
/// Pair searches use `budget`; the recursive constructions are budget-free.
/// `triangle-mcycle` uses m = n - 3.
pub fn run_engine(linker: &Linker<'_>, id: TheoremId, budget: SearchBudget) -> Result<LinkCertificate, ConstructError> {
    let n = linker.embedding().n();
    let v: Vec<usize> = (0..n).collect();
    match id {
        TheoremId::NonsplitPair => find_nonsplit_pair(linker, &v, Parity::Nonzero, budget),
        TheoremId::NonsplitPairOdd => find_nonsplit_pair(linker, &v, Parity::Odd, budget),
        TheoremId::TriangleMcycle => find_triangle_mcycle(linker, &v, n.saturating_sub(3)),
        TheoremId::ThreeComponentOdd => find_three_component_base(linker, &v, budget),
        TheoremId::EvenLink { r } => even_link(linker, &v, r),
        TheoremId::RingOfKeys { n } => ring_of_keys(linker, &v, n as usize, Parity::Nonzero),
        TheoremId::RingOfKeysOdd { n } => ring_of_keys(linker, &v, n as usize, Parity::Odd),
        TheoremId::Star { n } => {
            let count = to_u64(&alpha_prime(n as u64)?)? as usize;
            let blocks = make_blocks(&v, count, 7)?;
            star_recursion(linker, &blocks, n as usize, &triangle_cycle_base, Parity::Nonzero)?.into_certificate(linker, id)
        }
        TheoremId::Mod2Whitehead { r } => mod2_whitehead(linker, &v, r),
        TheoremId::Mod2Keys { n, r } => mod2_keys(linker, &v, n as usize, r),
        TheoremId::Mod4 => search_mod4(linker, &v, budget),
        TheoremId::Mod2Rings { r } => three_component_mod(linker, &v, r),
        TheoremId::AllEven { n } => all_even(linker, &v, n),
        TheoremId::Mod3 => mod3_two_component(linker, &v),
        TheoremId::Mod3Keys { n } => mod3_keys(linker, &v, n as usize),
    }
}
