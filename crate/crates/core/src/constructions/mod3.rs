use super::doubling::triangle_cycle_base;
use super::keys::{make_blocks, star_recursion};
use super::{certify, Assembled, to_u64, Artifact, ConstructError, LinkCertificate, Parity, TheoremId};
use crate::cycles::{build_bridge_family, choose_path_system, zero_block_select};
use crate::sequences::alpha_prime;
use crate::spatial::{chain_sum, fuse, Linker, OrientedCycle};

/// Vertices per block: a triangle and a 4-cycle.
const BLOCK: usize = 7;

fn is_mod3(v: i64) -> bool {
    v != 0 && v.rem_euclid(3) == 0
}

/// Five cycles spanning three disjoint cycles Z_1, Z_2, Z_3 whose chains add up to
/// the chains of the Z_i.
///
/// Each Z_i is cut at four corners p_j = floor(j |Z_i| / 4). A_1, A_2, A_3 join the
/// arc p1 -> p2 of one cycle with the arc p3 -> p0 of the next; A_4 chains the
/// arcs p0 -> p1 of Z_1, Z_2, Z_3 and A_5 the arcs p2 -> p3 of Z_3, Z_2, Z_1. Each
/// bridge edge is used once in each direction, so A_4 and A_5 share an edge with
/// each of A_1, A_2, A_3.
pub fn pentagon_cycles(z: [&OrientedCycle; 3]) -> Result<[OrientedCycle; 5], ConstructError> {
    for c in z {
        if c.len() < 4 {
            return Err(ConstructError::Precondition(format!("cycle {c} has fewer than 4 vertices")));
        }
    }
    let p = |c: &OrientedCycle, j: usize| j * c.len() / 4;
    let arc = |c: &OrientedCycle, from: usize, to: usize| c.arc(p(c, from), p(c, to % 4));
    let join = |parts: Vec<Vec<usize>>| OrientedCycle::new(parts.concat());
    let [z1, z2, z3] = z;
    let out = [
        join(vec![arc(z1, 1, 2), arc(z2, 3, 4)])?,
        join(vec![arc(z2, 1, 2), arc(z3, 3, 4)])?,
        join(vec![arc(z3, 1, 2), arc(z1, 3, 4)])?,
        join(vec![arc(z1, 0, 1), arc(z2, 0, 1), arc(z3, 0, 1)])?,
        join(vec![arc(z3, 2, 3), arc(z2, 2, 3), arc(z1, 2, 3)])?,
    ];
    if chain_sum(out.iter()) != chain_sum(z) {
        return Err(ConstructError::StepFailed("pentagon cycles do not add up to the keys".into()));
    }
    Ok(out)
}

/// Candidate unions of pentagon cycles (0-based indices) in the order the case
/// analysis prefers them, each followed by its complement, given their classes
/// (which must add up to a nonzero multiple of 3 with no single key class
/// divisible by 3). Returns a label for the branch taken.
pub fn pentagon_plan(a: &[i64; 5]) -> (String, Vec<Vec<usize>>) {
    let r = |v: i64| v.rem_euclid(3);
    let all: Vec<usize> = (0..5).collect();
    let without = |i: usize| all.iter().copied().filter(|&k| k != i).collect::<Vec<_>>();
    for i in [3, 4] {
        if r(a[i]) == 0 {
            return (format!("[A_{}] = 0 mod 3", i + 1), vec![vec![i], without(i)]);
        }
    }
    for i in 0..3 {
        if r(a[i]) == 0 {
            let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            // the other four form a cycle of cycles A_4, A_j, A_5, A_k
            let ring = [3, others[0], 4, others[1]];
            let mut cands = vec![vec![i]];
            let vals: Vec<i64> = ring.iter().map(|&k| a[k]).collect();
            if let Ok(sel) = zero_block_select(&vals, 3) {
                cands.push(sel.indices().into_iter().map(|k| ring[k]).collect());
            }
            return (format!("[A_{}] = 0 mod 3", i + 1), cands);
        }
    }
    let (x, y) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(x, y)| r(a[x]) == r(a[y]))
        .expect("two of three nonzero residues mod 3 agree");
    let c = 3 - x - y;
    let s1 = a[3];
    let s2 = s1 + a[x];
    let s3 = s2 + a[4];
    let label = format!("[A_{}] = [A_{}] mod 3; partial sums {s1}, {s2}, {s3}", x + 1, y + 1);
    let cands = if r(s1) == r(s3) {
        vec![vec![x, 4], vec![3, y, c]]
    } else if r(s2) == 0 {
        vec![vec![3, x], vec![y, c, 4]]
    } else if s3 != 0 {
        vec![vec![3, x, 4], vec![c, 4], vec![x, y, 3]]
    } else {
        vec![vec![c, 4], vec![x, y, 3]]
    };
    (label, cands)
}

fn try_union(linker: &Linker<'_>, l: &OrientedCycle, cycles: &[OrientedCycle], idx: &[usize]) -> Option<(OrientedCycle, i64)> {
    let a = fuse(idx.iter().map(|&i| &cycles[i])).ok()?;
    let q = linker.lk(l, &a).ok()?;
    is_mod3(q).then_some((a, q))
}

/// From a distinguished cycle `l` and three keys linking it, builds one cycle A
/// with lk(l, A) a nonzero multiple of 3.
pub fn mod3_from_keys(
    linker: &Linker<'_>,
    l: &OrientedCycle,
    keys: &[OrientedCycle],
) -> Result<(OrientedCycle, Vec<String>, Vec<Artifact>), ConstructError> {
    if keys.len() != 3 {
        return Err(ConstructError::Precondition(format!("expected 3 keys, got {}", keys.len())));
    }
    let mut trace = Vec::new();
    let mut z = Vec::with_capacity(3);
    for k in keys {
        let q = linker.lk(l, k)?;
        if q == 0 {
            return Err(ConstructError::Precondition(format!("key {k} does not link the distinguished cycle")));
        }
        z.push(if q < 0 { k.reversed() } else { k.clone() });
    }
    let q = linker.lk_row(l, &z)?;
    trace.push(format!("oriented keys: lk = {q:?}"));
    if let Some(i) = q.iter().position(|v| v % 3 == 0) {
        trace.push(format!("key {} already has lk divisible by 3", i + 1));
        return Ok((z[i].clone(), trace, vec![]));
    }
    let one = q.iter().position(|v| v % 3 == 1);
    let two = q.iter().position(|v| v % 3 == 2);
    if let (Some(i), Some(j)) = (one, two) {
        let ps = choose_path_system(&z[i], &z[j], 4)?;
        let fam = build_bridge_family(linker, l, &ps)?;
        let sel = zero_block_select(&fam.classes, 3)?;
        let (s, len) = sel.run();
        let a = fam.fuse_run(s, len)?;
        trace.push(format!(
            "residues 1 and 2 on keys {} and {}: 4 bridges with classes {:?}, run ({s}, {len})",
            i + 1,
            j + 1,
            fam.classes
        ));
        return Ok((a, trace, vec![Artifact::Bridges(fam), Artifact::Selection(sel)]));
    }
    let pent = pentagon_cycles([&z[0], &z[1], &z[2]])?;
    let a_cls = linker.lk_row(l, &pent)?;
    let classes: [i64; 5] = a_cls.clone().try_into().expect("five classes");
    trace.push(format!("all keys share residue {}; pentagon classes {a_cls:?}", q[0] % 3));
    let (label, cands) = pentagon_plan(&classes);
    for idx in &cands {
        if let Some((a, v)) = try_union(linker, l, &pent, idx) {
            let names: Vec<String> = idx.iter().map(|i| format!("A_{}", i + 1)).collect();
            trace.push(format!("{label}; took {} with lk {v}", names.join(" + ")));
            return Ok((a, trace, vec![]));
        }
    }
    // the planned unions failed to fuse; scan every union of pentagon cycles
    for mask in 1u32..32 {
        let idx: Vec<usize> = (0..5).filter(|i| mask >> i & 1 == 1).collect();
        if let Some((a, v)) = try_union(linker, l, &pent, &idx) {
            trace.push(format!("{label}; planned unions failed, fallback took mask {mask:05b} with lk {v}"));
            return Ok((a, trace, vec![]));
        }
    }
    Err(ConstructError::StepFailed(format!("{label}: no union of pentagon cycles has lk divisible by 3")))
}

/// Vertices needed by [`mod3_keys`].
pub fn mod3_keys_size(n: usize) -> Result<u64, ConstructError> {
    Ok(BLOCK as u64 * to_u64(&alpha_prime(3 * n as u64)?)?)
}

/// Two disjoint cycles L, A with lk(L, A) a nonzero multiple of 3, on the lowest
/// 35 vertices.
pub fn mod3_two_component(linker: &Linker<'_>, vertices: &[usize]) -> Result<LinkCertificate, ConstructError> {
    let (mut comps, trace, artifacts) = mod3_groups(linker, vertices, 1)?;
    comps.truncate(2);
    certify(linker, TheoremId::Mod3, comps, trace, artifacts)
}

/// L and n disjoint cycles, each with lk(L, A_i) a nonzero multiple of 3.
pub fn mod3_keys(linker: &Linker<'_>, vertices: &[usize], n: usize) -> Result<LinkCertificate, ConstructError> {
    let (comps, trace, artifacts) = mod3_groups(linker, vertices, n)?;
    certify(linker, TheoremId::Mod3Keys { n: n as u32 }, comps, trace, artifacts)
}

fn mod3_groups(
    linker: &Linker<'_>,
    vertices: &[usize],
    n: usize,
) -> Result<Assembled, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Precondition("n must be at least 1".into()));
    }
    let count = to_u64(&alpha_prime(3 * n as u64)?)? as usize;
    let blocks = make_blocks(vertices, count, BLOCK)?;
    let kl = star_recursion(linker, &blocks, 3 * n, &triangle_cycle_base, Parity::Nonzero)?;
    let mut trace = kl.trace;
    let mut artifacts = Vec::new();
    let mut comps = vec![kl.l.clone()];
    for (g, group) in kl.keys.chunks(3).enumerate() {
        let (a, t, arts) = mod3_from_keys(linker, &kl.l, group)?;
        trace.extend(t.into_iter().map(|s| format!("group {}: {s}", g + 1)));
        artifacts.extend(arts);
        comps.push(a);
    }
    Ok((comps, trace, artifacts))
}
