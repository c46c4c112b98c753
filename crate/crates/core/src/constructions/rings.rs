use super::doubling::{doubled_keys, doubling_block, even_link_construct, triangle_cycle_base};
use super::keys::{make_blocks, star_recursion};
use super::{
    certify, find_three_component_base, Assembled, to_u64, Artifact, ConstructError, LinkCertificate, Parity, SearchBudget,
    TheoremId,
};
use crate::cycles::{
    build_bridge_family, choose_path_system, max_block_decompose, select_zero_subsequence_mod2, BridgeFamily,
};
use crate::sequences::{alpha_prime, gamma_prime};
use crate::spatial::{Linker, OrientedCycle};

/// A cyclic run of strips `(start, len)`.
type Run = (usize, usize);

fn orient_positive(linker: &Linker<'_>, l: &OrientedCycle, c: &OrientedCycle) -> Result<(OrientedCycle, bool), ConstructError> {
    Ok(if linker.lk(l, c)? < 0 { (c.reversed(), true) } else { (c.clone(), false) })
}

fn run_sum(values: &[i64], (start, len): Run) -> i64 {
    (0..len).map(|k| values[(start + k) % values.len()]).sum()
}

/// Merges consecutive runs `parts[i..i+k]` (cyclically) into one run.
fn merge(parts: &[Run], t: usize, start: usize, count: usize) -> Run {
    let len = (0..count).map(|k| parts[(start + k) % parts.len()].1).sum::<usize>();
    (parts[start % parts.len()].0 % t, len)
}

/// Of a proper run and its complement, the one whose fusion has nonzero lk with `l`.
fn nonzero_side(
    linker: &Linker<'_>,
    fam: &BridgeFamily,
    l: &OrientedCycle,
    run: Run,
) -> Result<(OrientedCycle, String), ConstructError> {
    let t = fam.len();
    let a = fam.fuse_run(run.0, run.1)?;
    if linker.lk(&a, l)? != 0 {
        return Ok((a, format!("run ({}, {})", run.0, run.1)));
    }
    let comp = ((run.0 + run.1) % t, t - run.1);
    let b = fam.fuse_run(comp.0, comp.1)?;
    Ok((b, format!("complement run ({}, {}) since lk of ({}, {}) with L is 0", comp.0, comp.1, run.0, run.1)))
}

/// Vertices needed by [`three_component_mod`].
pub fn three_component_mod_size(r: u32) -> Result<u64, ConstructError> {
    let target = ((1u64 << r) + 1).pow(2);
    Ok(to_u64(&alpha_prime(3u64 << r)?)? * doubling_block(r, target)? as u64)
}

/// L, W, A with lk(L, W) and lk(L, A) nonzero multiples of 2^r and lk(W, A) even.
pub fn three_component_mod(linker: &Linker<'_>, vertices: &[usize], r: u32) -> Result<LinkCertificate, ConstructError> {
    if r == 0 {
        return Err(ConstructError::Precondition("r must be at least 1".into()));
    }
    let g = 1usize << r;
    let t = (g + 1) * (g + 1);
    let (l, keys, mut trace, mut artifacts) = doubled_keys(linker, vertices, 3, r, t as u64)?;
    let w = keys[0].clone();
    let (z1, f1) = orient_positive(linker, &l, &keys[1])?;
    let (z2, f2) = orient_positive(linker, &l, &keys[2])?;
    if f1 || f2 {
        trace.push(format!("oriented Z1, Z2 positively (flipped: {f1}, {f2})"));
    }
    for (name, z) in [("Z1", &z1), ("Z2", &z2)] {
        let lw = linker.lk(z, &w)?;
        if lw % 2 == 0 {
            trace.push(format!("lk({name}, W) = {lw} is even; A = {name}"));
            return certify(linker, TheoremId::Mod2Rings { r }, vec![l, w, z.clone()], trace, artifacts);
        }
    }
    for (name, z) in [("Z1", &z1), ("Z2", &z2)] {
        if z.len() < t {
            return Err(ConstructError::VertexBudget { stage: r as u64 + 1, needed: t, got: z.len() });
        }
        let _ = name;
    }
    let ps = choose_path_system(&z1, &z2, t)?;
    let fam = build_bridge_family(linker, &l, &ps)?;
    let cl = fam.classes.clone();
    let cw = linker.lk_row(&w, &fam.cycles)?;
    let expected_w = linker.lk(&z1, &w)? + linker.lk(&z2, &w)?;
    if cw.iter().sum::<i64>() != expected_w {
        return Err(ConstructError::StepFailed("strip classes against W do not add up".into()));
    }
    // in each group of g strips (followed by one spare strip), the first run with
    // sum divisible by g, found from repeated prefix residues
    let gm = g as i64;
    let mut zero_runs: Vec<Run> = Vec::with_capacity(g + 1);
    for j in 0..=g {
        let base = j * (g + 1);
        let mut seen = vec![None; g];
        seen[0] = Some(0usize);
        let mut acc = 0i64;
        let mut found = None;
        for k in 1..=g {
            acc += cl[base + k - 1];
            let res = acc.rem_euclid(gm) as usize;
            if let Some(i) = seen[res] {
                found = Some((base + i, k - i));
                break;
            }
            seen[res] = Some(k);
        }
        zero_runs.push(found.expect("pigeonhole over g + 1 prefix sums"));
    }
    // alternate zero runs G_j with the stretches B_j between them
    let mut parts: Vec<Run> = Vec::with_capacity(2 * (g + 1));
    for j in 0..=g {
        let gj = zero_runs[j];
        let next = zero_runs[(j + 1) % (g + 1)];
        let b_start = (gj.0 + gj.1) % t;
        let b_len = (next.0 + t - b_start) % t;
        parts.push(gj);
        parts.push((b_start, b_len));
    }
    let b_vals: Vec<i64> = (0..=g).map(|j| run_sum(&cl, parts[2 * j + 1])).collect();
    // first i < j <= g with equal prefix residues of the B values
    let mut seen = vec![None; g];
    seen[0] = Some(0usize);
    let mut acc = 0i64;
    let mut pair = None;
    for k in 1..=g {
        acc += b_vals[k - 1];
        let res = acc.rem_euclid(gm) as usize;
        if let Some(i) = seen[res] {
            pair = Some((i, k));
            break;
        }
        seen[res] = Some(k);
    }
    let (i, j) = pair.expect("pigeonhole over g + 1 prefix sums");
    // A''_1 = G_i, A''_2 = B_i .. B_{j-1}, A''_3 = the rest (from G_j round to B_{i-1})
    let p = parts.len();
    let a1 = merge(&parts, t, 2 * i, 1);
    let a2 = merge(&parts, t, 2 * i + 1, 2 * (j - i) - 1);
    let a3 = merge(&parts, t, 2 * j, p - 2 * (j - i));
    let three = [a1, a2, a3];
    let l_classes: Vec<i64> = three.iter().map(|&run| run_sum(&cl, run)).collect();
    let w_classes: Vec<i64> = three.iter().map(|&run| run_sum(&cw, run)).collect();
    for (k, c) in l_classes.iter().enumerate() {
        if c.rem_euclid(gm) != 0 {
            return Err(ConstructError::StepFailed(format!("A''_{} has class {c}, not divisible by {g}", k + 1)));
        }
    }
    trace.push(format!(
        "{t} bridges; zero runs {zero_runs:?}; B classes {b_vals:?}; A'' classes vs L {l_classes:?}, vs W {w_classes:?}"
    ));
    let sel = select_zero_subsequence_mod2(&w_classes)?;
    let (s, len) = sel.run();
    let run = merge(&three, t, s, len);
    let (a, how) = nonzero_side(linker, &fam, &l, run)?;
    trace.push(format!("selected A''[{s}..{}] with even class vs W; took {how}", s + len));
    artifacts.push(Artifact::Bridges(fam));
    artifacts.push(Artifact::Selection(sel));
    certify(linker, TheoremId::Mod2Rings { r }, vec![l, w, a], trace, artifacts)
}

/// Vertices needed by [`all_even`].
pub fn all_even_size(n: u32) -> Result<u64, ConstructError> {
    if n == 1 {
        return Ok(10);
    }
    let keys = (1u64 << (n + 1)) - 2;
    Ok(to_u64(&alpha_prime(keys)?)? * (to_u64(&gamma_prime(n as u64)?)? + 3))
}

/// L and n further components with all pairwise linking numbers even and every
/// lk(L, V_i) nonzero.
pub fn all_even(linker: &Linker<'_>, vertices: &[usize], n: u32) -> Result<LinkCertificate, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Precondition("n must be at least 1".into()));
    }
    super::need_vertices(vertices, all_even_size(n)?)?;
    if n == 1 {
        let base = find_three_component_base(linker, vertices, SearchBudget::default())?;
        let [l, z, w] = <[OrientedCycle; 3]>::try_from(base.components).expect("three components");
        let el = even_link_construct(linker, &l, &z, &w, 0)?;
        let mut trace = base.case_trace;
        trace.extend(el.trace);
        return certify(linker, TheoremId::AllEven { n }, vec![l, el.a], trace, el.artifacts);
    }
    let keys = (1usize << (n + 1)) - 2;
    let count = to_u64(&alpha_prime(keys as u64)?)? as usize;
    let size = to_u64(&gamma_prime(n as u64)?)? as usize + 3;
    let blocks = make_blocks(vertices, count, size)?;
    let kl = star_recursion(linker, &blocks, keys, &triangle_cycle_base, Parity::Nonzero)?;
    let (comps, trace, artifacts) = all_even_from_keys(linker, &kl.l, kl.keys, n)?;
    let mut full = kl.trace;
    full.extend(trace);
    certify(linker, TheoremId::AllEven { n }, comps, full, artifacts)
}

/// Turns L and 2^(n+1) - 2 keys (each linking L nonzero) into L, V_1, .., V_n with
/// all pairwise linking numbers even and lk(L, V_j) nonzero.
///
/// Keys are split into sets of 2, 4, .., 2^n. Set j is halved j times; at level k
/// a pair is merged only when both members have odd lk with V_{k-1} (V_0 = L),
/// using 3 2^(k-1) bridges: the strips are cut into as many blocks as possible
/// with even class against L, then V_1, .., V_(k-2), and a run of the remaining
/// blocks with even class against V_(k-1) (or its complement) is fused.
pub fn all_even_from_keys(
    linker: &Linker<'_>,
    l: &OrientedCycle,
    keys: Vec<OrientedCycle>,
    n: u32,
) -> Result<Assembled, ConstructError> {
    let needed = (1usize << (n + 1)) - 2;
    if keys.len() != needed {
        return Err(ConstructError::Precondition(format!("expected {needed} keys, got {}", keys.len())));
    }
    let mut vs: Vec<OrientedCycle> = Vec::new();
    let mut trace = Vec::new();
    let mut artifacts = Vec::new();
    let mut offset = 0;
    for j in 1..=n as usize {
        let mut cur: Vec<OrientedCycle> = keys[offset..offset + (1 << j)].to_vec();
        offset += 1 << j;
        for k in 1..=j {
            let refs: Vec<&OrientedCycle> = std::iter::once(l).chain(vs.iter()).take(k).collect();
            let last = refs[k - 1];
            let mut next = Vec::new();
            for (p, pair) in cur.chunks(2).enumerate() {
                let (x, y) = (&pair[0], &pair[1]);
                let (qx, qy) = (linker.lk(x, last)?, linker.lk(y, last)?);
                if qx % 2 == 0 || qy % 2 == 0 {
                    let pick_x = qx % 2 == 0 && (qy % 2 != 0 || x.len() >= y.len());
                    trace.push(format!("set {j} level {k} pair {p}: member already even against V_{}; advanced", k - 1));
                    next.push(if pick_x { x.clone() } else { y.clone() });
                    continue;
                }
                let tb = 3usize << (k - 1);
                for c in [x, y] {
                    if c.len() < tb {
                        return Err(ConstructError::VertexBudget { stage: k as u64, needed: tb, got: c.len() });
                    }
                }
                let (x, _) = orient_positive(linker, l, x)?;
                let (y, _) = orient_positive(linker, l, y)?;
                let ps = choose_path_system(&x, &y, tb)?;
                let fam = build_bridge_family(linker, l, &ps)?;
                let mut blocks: Vec<Run> = (0..tb).map(|i| (i, 1)).collect();
                for (ri, reference) in refs[..k - 1].iter().enumerate() {
                    let cls = linker.lk_row(reference, &fam.cycles)?;
                    let vals: Vec<i64> = blocks.iter().map(|&b| run_sum(&cls, b)).collect();
                    let d = max_block_decompose(&vals, 2)?;
                    blocks = d.blocks.iter().map(|&(s, len)| merge(&blocks, tb, s, len)).collect();
                    trace.push(format!(
                        "set {j} level {k} pair {p}: {} blocks after cutting against V_{ri}",
                        blocks.len()
                    ));
                    artifacts.push(Artifact::Decomposition(d));
                }
                if blocks.len() < 3 {
                    return Err(ConstructError::StepFailed(format!(
                        "set {j} level {k}: only {} blocks left",
                        blocks.len()
                    )));
                }
                let cls = linker.lk_row(last, &fam.cycles)?;
                let vals: Vec<i64> = blocks.iter().map(|&b| run_sum(&cls, b)).collect();
                let sel = select_zero_subsequence_mod2(&vals)?;
                let (s, len) = sel.run();
                let run = merge(&blocks, tb, s, len);
                let (a, how) = nonzero_side(linker, &fam, l, run)?;
                trace.push(format!("set {j} level {k} pair {p}: {tb} bridges; took {how}"));
                artifacts.push(Artifact::Bridges(fam));
                artifacts.push(Artifact::Selection(sel));
                next.push(a);
            }
            cur = next;
        }
        vs.push(cur.pop().expect("one survivor"));
    }
    let mut comps = vec![l.clone()];
    comps.extend(vs);
    Ok((comps, trace, artifacts))
}
