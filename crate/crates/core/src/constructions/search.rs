use super::{certify, lowest, need_vertices, ConstructError, LinkCertificate, Parity, TheoremId};
use crate::cycles::{enumerate_disjoint_tuples, TupleSpec};
use crate::spatial::{Linker, OrientedCycle};

/// Limits for exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest component length considered; `None` means no limit.
    pub max_len: Option<usize>,
    /// Largest number of candidate tuples examined before giving up.
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_len: None, max_candidates: u64::MAX }
    }
}

impl SearchBudget {
    pub fn triangles_only() -> Self {
        SearchBudget { max_len: Some(3), ..Self::default() }
    }
}

/// Scans disjoint pairs on `pool` by total size (smallest first) for the first
/// pair whose linking number satisfies `pred`.
fn scan_pairs(
    linker: &Linker<'_>,
    pool: &[usize],
    budget: SearchBudget,
    what: &str,
    pred: impl Fn(i64) -> bool,
) -> Result<(OrientedCycle, OrientedCycle, u64), ConstructError> {
    let max_len = budget.max_len.unwrap_or(pool.len()).min(pool.len());
    let mut examined = 0u64;
    for total in 6..=pool.len().min(2 * max_len) {
        for pair in enumerate_disjoint_tuples(pool, TupleSpec::new(2, 3, max_len).with_total(total)) {
            if examined >= budget.max_candidates {
                return Err(ConstructError::BudgetExhausted { what: what.into(), examined });
            }
            examined += 1;
            if pred(linker.lk(&pair[0], &pair[1])?) {
                let mut it = pair.into_iter();
                return Ok((it.next().unwrap(), it.next().unwrap(), examined));
            }
        }
    }
    Err(ConstructError::BudgetExhausted { what: what.into(), examined })
}

/// Finds two disjoint cycles whose linking number is nonzero (or odd).
pub fn find_nonsplit_pair(
    linker: &Linker<'_>,
    vertices: &[usize],
    mode: Parity,
    budget: SearchBudget,
) -> Result<LinkCertificate, ConstructError> {
    need_vertices(vertices, 6)?;
    let pool = lowest(vertices, vertices.len());
    let (a, b, examined) = scan_pairs(linker, &pool, budget, "nonsplit pair search", |lk| mode.holds(lk))?;
    let theorem = match mode {
        Parity::Nonzero => TheoremId::NonsplitPair,
        Parity::Odd => TheoremId::NonsplitPairOdd,
    };
    let trace = vec![format!("pair scan ({}): hit after {examined} pairs", mode.label())];
    certify(linker, theorem, vec![a, b], trace, vec![])
}

/// Finds two disjoint cycles with linking number 2 mod 4 among the lowest ten vertices.
pub fn search_mod4(
    linker: &Linker<'_>,
    vertices: &[usize],
    budget: SearchBudget,
) -> Result<LinkCertificate, ConstructError> {
    need_vertices(vertices, 10)?;
    let pool = lowest(vertices, 10);
    let (a, b, examined) = scan_pairs(linker, &pool, budget, "mod-4 pair search", |lk| lk.rem_euclid(4) == 2)?;
    let trace = vec![format!("pair scan (2 mod 4): hit after {examined} pairs")];
    certify(linker, TheoremId::Mod4, vec![a, b], trace, vec![])
}

/// A triangle `l` and a cycle `z` through all other `block` vertices with lk(l, z) != 0.
///
/// Starts from a linked pair of triangles on the six lowest vertices, then inserts
/// the remaining vertices one at a time (ascending) into the first edge u -> v of
/// `z` that keeps the linking number nonzero. Inserting x into u -> v adds the
/// triangle u -> x -> v to the chain of `z`; these triangles sum to -z over all
/// edges, so they cannot all cancel lk(l, z), and a suitable edge always exists.
pub(crate) fn triangle_and_cycle(
    linker: &Linker<'_>,
    block: &[usize],
) -> Result<(OrientedCycle, OrientedCycle, Vec<String>), ConstructError> {
    need_vertices(block, 6)?;
    let block = lowest(block, block.len());
    let (l, z0, examined) = scan_pairs(linker, &block[..6], SearchBudget::triangles_only(), "linked triangles", |lk| lk != 0)?;
    let mut q = linker.lk(&l, &z0)?;
    let mut z: Vec<usize> = z0.vertices().to_vec();
    for &x in &block[6..] {
        let mut placed = false;
        for i in 0..z.len() {
            let (u, v) = (z[i], z[(i + 1) % z.len()]);
            let delta = linker.lk(&l, &OrientedCycle::new(vec![u, x, v])?)?;
            if q + delta != 0 {
                z.insert(i + 1, x);
                q += delta;
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(ConstructError::StepFailed(format!("no insertion edge keeps lk nonzero for vertex {x}")));
        }
    }
    let z = OrientedCycle::new(z)?;
    let trace = vec![format!(
        "triangle {l} linked with triangle after {examined} pairs; grown to a {}-cycle by insertion, lk = {q}",
        z.len()
    )];
    Ok((l, z, trace))
}

/// Finds a triangle and a disjoint m-cycle with nonzero linking number on the
/// lowest m + 3 vertices.
pub fn find_triangle_mcycle(linker: &Linker<'_>, vertices: &[usize], m: usize) -> Result<LinkCertificate, ConstructError> {
    if m < 3 {
        return Err(ConstructError::Precondition(format!("m = {m}: cycles need at least 3 vertices")));
    }
    need_vertices(vertices, m as u64 + 3)?;
    let block = lowest(vertices, m + 3);
    let (l, z, trace) = triangle_and_cycle(linker, &block)?;
    certify(linker, TheoremId::TriangleMcycle, vec![l, z], trace, vec![])
}

/// Finds L, Z, W on the lowest ten vertices with lk(L, Z) and lk(L, W) odd.
///
/// Scans disjoint triples of total size 9, then 10, trying each member as L.
pub fn find_three_component_base(
    linker: &Linker<'_>,
    vertices: &[usize],
    budget: SearchBudget,
) -> Result<LinkCertificate, ConstructError> {
    need_vertices(vertices, 10)?;
    let pool = lowest(vertices, 10);
    let mut examined = 0u64;
    for total in [9, 10] {
        for triple in enumerate_disjoint_tuples(&pool, TupleSpec::new(3, 3, 4).with_total(total)) {
            if examined >= budget.max_candidates {
                return Err(ConstructError::BudgetExhausted { what: "three-component search".into(), examined });
            }
            examined += 1;
            let m = linker.matrix(&triple)?;
            for li in 0..3 {
                let others: Vec<usize> = (0..3).filter(|&j| j != li).collect();
                if others.iter().all(|&j| m[li][j].rem_euclid(2) == 1) {
                    let comps = vec![triple[li].clone(), triple[others[0]].clone(), triple[others[1]].clone()];
                    let trace = vec![format!("triple scan: hit after {examined} triples (total size {total})")];
                    return certify(linker, TheoremId::ThreeComponentOdd, comps, trace, vec![]);
                }
            }
        }
    }
    Err(ConstructError::BudgetExhausted { what: "three-component search".into(), examined })
}
