use rayon::prelude::*;

use super::keys::{make_blocks, star_recursion};
use super::search::triangle_and_cycle;
use super::{
    certify, find_nonsplit_pair, find_three_component_base, lowest, need_vertices, to_u64, Artifact, ConstructError,
    LinkCertificate, Parity, SearchBudget, TheoremId,
};
use crate::cycles::{build_bridge_family, choose_path_system, zero_block_select};
use crate::sequences::{alpha_prime, vertex_budget};
use crate::spatial::{Linker, OrientedCycle};

/// Result of one bridge-and-select step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenLink {
    pub a: OrientedCycle,
    pub trace: Vec<String>,
    pub artifacts: Vec<Artifact>,
}

fn pow2(r: u32) -> i64 {
    1i64 << r
}

/// From lk(L, Z), lk(L, W) both nonzero multiples of 2^r, builds a cycle A with
/// lk(A, L) a nonzero multiple of 2^(r+1).
///
/// Z and W are oriented so both linking numbers are positive. If one of them is
/// already divisible by 2^(r+1) it is returned; otherwise 2^(r+1) + 1 bridges
/// from Z to W give strips whose classes add up to q_1 + q_2, and a run of strips
/// with sum divisible by 2^(r+1) (or its complement) fuses into A.
pub fn even_link_construct(
    linker: &Linker<'_>,
    l: &OrientedCycle,
    z: &OrientedCycle,
    w: &OrientedCycle,
    r: u32,
) -> Result<EvenLink, ConstructError> {
    let m = pow2(r + 1);
    let half = pow2(r);
    let mut oriented = Vec::new();
    let mut trace = Vec::new();
    for (name, c) in [("Z", z), ("W", w)] {
        let q = linker.lk(l, c)?;
        if q == 0 || q % half != 0 {
            return Err(ConstructError::Precondition(format!("lk(L, {name}) = {q} is not a nonzero multiple of {half}")));
        }
        if q < 0 {
            trace.push(format!("reversed {name} (lk was {q})"));
            oriented.push((c.reversed(), -q));
        } else {
            oriented.push((c.clone(), q));
        }
    }
    for (name, (c, q)) in ["Z", "W"].iter().zip(&oriented) {
        if q % m == 0 {
            trace.push(format!("lk(L, {name}) = {q} is already divisible by {m}"));
            return Ok(EvenLink { a: c.clone(), trace, artifacts: vec![] });
        }
    }
    let (zc, q1) = &oriented[0];
    let (wc, q2) = &oriented[1];
    let t = m as usize + 1;
    let ps = choose_path_system(zc, wc, t)?;
    let fam = build_bridge_family(linker, l, &ps)?;
    let sel = zero_block_select(&fam.classes, m)?;
    let (start, len) = sel.run();
    let a = fam.fuse_run(start, len)?;
    let lk = linker.lk(&a, l)?;
    if lk == 0 || lk % m != 0 {
        return Err(ConstructError::StepFailed(format!("fused strip run has lk {lk}, expected a nonzero multiple of {m}")));
    }
    trace.push(format!(
        "q = ({q1}, {q2}); {t} bridges; strip classes {:?}; run start {start} len {len}{} -> lk {lk}",
        fam.classes,
        if sel.complement { " (complement)" } else { "" }
    ));
    Ok(EvenLink { a, trace, artifacts: vec![Artifact::Bridges(fam), Artifact::Selection(sel)] })
}

/// Halves 2^r keys r times: at stage s each pair either advances a member whose
/// linking number with L is already divisible by 2^s (the longer one if both
/// are), or is merged by [`even_link_construct`] with 2^s + 1 bridges.
pub fn iterated_doubling(
    linker: &Linker<'_>,
    l: &OrientedCycle,
    keys: Vec<OrientedCycle>,
    r: u32,
) -> Result<EvenLink, ConstructError> {
    if keys.len() != 1usize << r {
        return Err(ConstructError::Precondition(format!("expected {} keys, got {}", 1usize << r, keys.len())));
    }
    let mut survivors = keys;
    let mut trace = Vec::new();
    let mut artifacts = Vec::new();
    for s in 1..=r {
        let m = pow2(s);
        let mut next = Vec::with_capacity(survivors.len() / 2);
        for (p, pair) in survivors.chunks(2).enumerate() {
            let (x, y) = (&pair[0], &pair[1]);
            let (qx, qy) = (linker.lk(l, x)?, linker.lk(l, y)?);
            let ok_x = qx % m == 0;
            let ok_y = qy % m == 0;
            if ok_x || ok_y {
                let pick_x = ok_x && (!ok_y || x.len() >= y.len());
                let (c, q) = if pick_x { (x, qx) } else { (y, qy) };
                trace.push(format!("stage {s} pair {p}: lk {q} already divisible by {m}; advanced"));
                next.push(c.clone());
                continue;
            }
            let need = (1usize << s) + 1;
            for c in [x, y] {
                if c.len() < need {
                    return Err(ConstructError::VertexBudget { stage: s as u64, needed: need, got: c.len() });
                }
            }
            let el = even_link_construct(linker, l, x, y, s - 1)?;
            trace.extend(el.trace.into_iter().map(|t| format!("stage {s} pair {p}: {t}")));
            artifacts.extend(el.artifacts);
            next.push(el.a);
        }
        survivors = next;
    }
    Ok(EvenLink { a: survivors.pop().expect("one survivor"), trace, artifacts })
}

/// Block size for the doubling constructions: c_1 + 3 where c_1 is the vertex
/// budget that survives `r` halvings ending with at least `target` vertices.
pub(crate) fn doubling_block(r: u32, target: u64) -> Result<usize, ConstructError> {
    if r == 0 {
        return Ok(6);
    }
    let c1 = to_u64(&vertex_budget(r as u64, target)?[0])?;
    Ok(c1.max(3) as usize + 3)
}

pub(crate) fn triangle_cycle_base(
    linker: &Linker<'_>,
    block: &[usize],
) -> Result<(OrientedCycle, OrientedCycle, Vec<String>), ConstructError> {
    triangle_and_cycle(linker, block)
}

/// Vertices needed by [`even_link`].
pub fn even_link_size(r: u32) -> Result<u64, ConstructError> {
    Ok(to_u64(&alpha_prime(2 << r)?)? * even_link_block(r)? as u64)
}

fn even_link_block(r: u32) -> Result<usize, ConstructError> {
    doubling_block(r, (2u64 << r) + 1)
}

/// L and A with lk(L, A) a nonzero multiple of 2^(r+1): two keys divisible by
/// 2^r are built over blocks sized so that both keep at least 2^(r+1) + 1
/// vertices, then merged by [`even_link_construct`].
pub fn even_link(linker: &Linker<'_>, vertices: &[usize], r: u32) -> Result<LinkCertificate, ConstructError> {
    need_vertices(vertices, even_link_size(r)?)?;
    let count = to_u64(&alpha_prime(2 << r)?)? as usize;
    let blocks = make_blocks(vertices, count, even_link_block(r)?)?;
    let kl = star_recursion(linker, &blocks, 2 << r, &triangle_cycle_base, Parity::Nonzero)?;
    let mut trace = kl.trace;
    let mut halves = Vec::with_capacity(2);
    for (i, group) in kl.keys.chunks(1 << r).enumerate() {
        let el = iterated_doubling(linker, &kl.l, group.to_vec(), r)?;
        trace.extend(el.trace.into_iter().map(|t| format!("group {i}: {t}")));
        halves.push(el.a);
    }
    let el = even_link_construct(linker, &kl.l, &halves[0], &halves[1], r)?;
    trace.extend(el.trace);
    certify(linker, TheoremId::EvenLink { r }, vec![kl.l, el.a], trace, el.artifacts)
}

/// Vertices needed by [`mod2_whitehead`].
pub fn mod2_whitehead_size(r: u32) -> Result<u64, ConstructError> {
    Ok(match r {
        0 => 6,
        1 => 10,
        _ => to_u64(&alpha_prime(1 << r)?)? * doubling_block(r, 4)? as u64,
    })
}

/// A two-component link with lk a nonzero multiple of 2^r.
pub fn mod2_whitehead(linker: &Linker<'_>, vertices: &[usize], r: u32) -> Result<LinkCertificate, ConstructError> {
    need_vertices(vertices, mod2_whitehead_size(r)?)?;
    let theorem = TheoremId::Mod2Whitehead { r };
    match r {
        0 => {
            let cert = find_nonsplit_pair(linker, &lowest(vertices, 6), Parity::Nonzero, SearchBudget::triangles_only())?;
            certify(linker, theorem, cert.components, cert.case_trace, vec![])
        }
        1 => {
            let base = find_three_component_base(linker, vertices, SearchBudget::default())?;
            let [l, z, w] = <[OrientedCycle; 3]>::try_from(base.components).expect("three components");
            let el = even_link_construct(linker, &l, &z, &w, 0)?;
            let mut trace = base.case_trace;
            trace.extend(el.trace);
            certify(linker, theorem, vec![l, el.a], trace, el.artifacts)
        }
        _ => {
            let count = to_u64(&alpha_prime(1 << r)?)? as usize;
            let blocks = make_blocks(vertices, count, doubling_block(r, 4)?)?;
            let kl = star_recursion(linker, &blocks, 1 << r, &triangle_cycle_base, Parity::Nonzero)?;
            let el = iterated_doubling(linker, &kl.l, kl.keys, r)?;
            let mut trace = kl.trace;
            trace.extend(el.trace);
            certify(linker, theorem, vec![kl.l, el.a], trace, el.artifacts)
        }
    }
}

/// Vertices needed by [`mod2_keys`].
pub fn mod2_keys_size(n: usize, r: u32) -> Result<u64, ConstructError> {
    if n == 1 {
        return mod2_whitehead_size(r);
    }
    Ok(to_u64(&alpha_prime((n as u64) << r)?)? * doubling_block(r, 4)? as u64)
}

/// L and n keys, each lk(L, Z_i) a nonzero multiple of 2^r.
///
/// Builds n 2^r keys over blocks, then halves each group of 2^r keys
/// independently with [`iterated_doubling`].
pub fn mod2_keys(linker: &Linker<'_>, vertices: &[usize], n: usize, r: u32) -> Result<LinkCertificate, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Precondition("n must be at least 1".into()));
    }
    let theorem = TheoremId::Mod2Keys { n: n as u32, r };
    if n == 1 {
        let cert = mod2_whitehead(linker, vertices, r)?;
        return certify(linker, theorem, cert.components, cert.case_trace, cert.artifacts);
    }
    let (l, keys, mut trace, artifacts) = doubled_keys(linker, vertices, n, r, 4)?;
    let mut comps = vec![l];
    comps.extend(keys);
    trace.insert(0, format!("{n} groups of {} keys", 1usize << r));
    certify(linker, theorem, comps, trace, artifacts)
}

/// Distinguished cycle, keys, case trace and artifacts.
pub(crate) type KeysWithTrace = (OrientedCycle, Vec<OrientedCycle>, Vec<String>, Vec<Artifact>);

/// Star recursion with n 2^r keys over blocks sized for `target` final vertices,
/// followed by independent doubling of each group of 2^r keys.
pub(crate) fn doubled_keys(
    linker: &Linker<'_>,
    vertices: &[usize],
    n: usize,
    r: u32,
    target: u64,
) -> Result<KeysWithTrace, ConstructError> {
    let total_keys = n << r;
    let count = to_u64(&alpha_prime(total_keys as u64)?)? as usize;
    let blocks = make_blocks(vertices, count, doubling_block(r, target)?)?;
    let kl = star_recursion(linker, &blocks, total_keys, &triangle_cycle_base, Parity::Nonzero)?;
    let groups: Vec<Vec<OrientedCycle>> = kl.keys.chunks(1 << r).map(|g| g.to_vec()).collect();
    let doubled: Vec<EvenLink> = groups
        .into_par_iter()
        .map(|g| iterated_doubling(linker, &kl.l, g, r))
        .collect::<Result<_, _>>()?;
    let mut trace = kl.trace;
    let mut artifacts = Vec::new();
    let mut keys = Vec::new();
    for (i, el) in doubled.into_iter().enumerate() {
        trace.extend(el.trace.into_iter().map(|t| format!("group {i}: {t}")));
        artifacts.extend(el.artifacts);
        keys.push(el.a);
    }
    Ok((kl.l, keys, trace, artifacts))
}
