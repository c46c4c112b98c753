use super::search::find_nonsplit_pair;
use super::{
    certify, find_three_component_base, lowest, need_vertices, to_u64, ConstructError, LinkCertificate, Parity,
    SearchBudget, TheoremId,
};
use crate::sequences::{alpha, alpha_prime};
use crate::spatial::{fuse, Linker, OrientedCycle};

/// A distinguished cycle `l` and keys that each link it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLink {
    pub l: OrientedCycle,
    pub keys: Vec<OrientedCycle>,
    pub trace: Vec<String>,
}

impl KeyLink {
    pub fn into_certificate(self, linker: &Linker<'_>, theorem: TheoremId) -> Result<LinkCertificate, ConstructError> {
        let mut comps = vec![self.l];
        comps.extend(self.keys);
        certify(linker, theorem, comps, self.trace, vec![])
    }
}

/// Finds a linked pair (L, Z) inside one vertex block.
pub type BaseSearcher<'s> =
    dyn Fn(&Linker<'_>, &[usize]) -> Result<(OrientedCycle, OrientedCycle, Vec<String>), ConstructError> + Sync + 's;

fn holding(linker: &Linker<'_>, mode: Parity, c: &OrientedCycle, keys: &[OrientedCycle]) -> Result<Vec<bool>, ConstructError> {
    Ok(linker.lk_row(c, keys)?.into_iter().map(|v| mode.holds(v)).collect())
}

fn count(h: &[bool]) -> usize {
    h.iter().filter(|&&b| b).count()
}

/// Named candidate cycles for the new distinguished component.
struct Candidates(Vec<(&'static str, OrientedCycle)>);

impl Candidates {
    fn get(&self, name: &str) -> &OrientedCycle {
        &self.0.iter().find(|(n, _)| *n == name).expect("candidate exists").1
    }
}

fn edge_reversed(c: &OrientedCycle) -> [usize; 2] {
    [c.vertices()[1], c.vertices()[0]]
}

/// Takes `chosen` if it links at least `n` keys; otherwise tries every other
/// candidate in order. The trace records any fallback.
fn finish(
    linker: &Linker<'_>,
    mode: Parity,
    n: usize,
    chosen: &str,
    cands: &Candidates,
    keys: &[OrientedCycle],
    mut trace: Vec<String>,
) -> Result<KeyLink, ConstructError> {
    let order = std::iter::once(chosen).chain(cands.0.iter().map(|(name, _)| *name).filter(|&x| x != chosen));
    for (k, name) in order.enumerate() {
        let c = cands.get(name);
        let h = holding(linker, mode, c, keys)?;
        if count(&h) >= n {
            if k > 0 {
                trace.push(format!("fallback: branch `{chosen}` links fewer than {n} keys; `{name}` used instead"));
            }
            let picked: Vec<OrientedCycle> =
                keys.iter().zip(&h).filter(|(_, &b)| b).map(|(z, _)| z.clone()).take(n).collect();
            trace.push(format!("n={n}: new L = `{name}` ({} vertices)", c.len()));
            return Ok(KeyLink { l: c.clone(), keys: picked, trace });
        }
    }
    Err(ConstructError::StepFailed(format!("no candidate cycle links {n} keys (branch `{chosen}`)")))
}

fn merged_trace(left: &KeyLink, right: &KeyLink) -> Vec<String> {
    let mut t: Vec<String> = left.trace.iter().map(|s| format!("left: {s}")).collect();
    t.extend(right.trace.iter().map(|s| format!("right: {s}")));
    t
}

/// Combines two (n-1)-key links into an n-key link, for even n.
fn even_step(linker: &Linker<'_>, mode: Parity, n: usize, left: KeyLink, right: KeyLink) -> Result<KeyLink, ConstructError> {
    let mut trace = merged_trace(&left, &right);
    let (l, lp) = (&left.l, &right.l);
    let keys: Vec<OrientedCycle> = left.keys.iter().chain(&right.keys).cloned().collect();
    let side = left.keys.len();
    let [a0, a1] = edge_reversed(l);
    let [b0, b1] = edge_reversed(lp);
    let v = OrientedCycle::new(vec![a0, a1, b0, b1])?;
    let cands = Candidates(vec![
        ("L", l.clone()),
        ("L'", lp.clone()),
        ("V", v.clone()),
        ("L+V+L'", fuse([l, &v, lp])?),
        ("V+L", fuse([&v, l])?),
        ("V+L'", fuse([&v, lp])?),
    ]);
    for name in ["L", "L'"] {
        if count(&holding(linker, mode, cands.get(name), &keys)?) >= n {
            trace.push(format!("even step n={n}: {name} links a key of the other half (short-circuit)"));
            return finish(linker, mode, n, name, &cands, &keys, trace);
        }
    }
    let hv = holding(linker, mode, &v, &keys)?;
    let c = count(&hv);
    let chosen = if c >= n {
        "V"
    } else if c + 2 <= n {
        "L+V+L'"
    } else {
        let a = count(&hv[..side]);
        let b = count(&hv[side..]);
        trace.push(format!("even step n={n}: V links {a} left and {b} right keys"));
        if b > a {
            "V+L"
        } else {
            "V+L'"
        }
    };
    trace.push(format!("even step n={n}: V links {c} of {} keys -> `{chosen}`", keys.len()));
    finish(linker, mode, n, chosen, &cands, &keys, trace)
}

/// Combines two (n-1)-key links and an extra linked pair (L'', T) into an n-key link, for odd n.
fn odd_step(
    linker: &Linker<'_>,
    mode: Parity,
    n: usize,
    left: KeyLink,
    right: KeyLink,
    extra: (OrientedCycle, OrientedCycle),
) -> Result<KeyLink, ConstructError> {
    let mut trace = merged_trace(&left, &right);
    let (l, lp) = (&left.l, &right.l);
    let (lpp, t) = extra;
    let zkeys: Vec<OrientedCycle> = left.keys.iter().chain(&right.keys).cloned().collect();
    let mut keys = zkeys.clone();
    keys.push(t.clone());
    let [a0, a1] = edge_reversed(l);
    let [b0, b1] = edge_reversed(lp);
    let [c0, c1] = edge_reversed(&lpp);
    let v = OrientedCycle::new(vec![a0, a1, b0, b1, c0, c1])?;
    let cands = Candidates(vec![
        ("L", l.clone()),
        ("L'", lp.clone()),
        ("V", v.clone()),
        ("L+V+L'", fuse([l, &v, lp])?),
        ("V+L''", fuse([&v, &lpp])?),
        ("V+L+L'+L''", fuse([&v, l, lp, &lpp])?),
        ("V+L", fuse([&v, l])?),
        ("V+L'", fuse([&v, lp])?),
        ("V+L+L''", fuse([&v, l, &lpp])?),
        ("V+L'+L''", fuse([&v, lp, &lpp])?),
    ]);
    for name in ["L", "L'"] {
        if count(&holding(linker, mode, cands.get(name), &keys)?) >= n {
            trace.push(format!("odd step n={n}: {name} links a key of the other half or T (short-circuit)"));
            return finish(linker, mode, n, name, &cands, &keys, trace);
        }
    }
    let hv = holding(linker, mode, &v, &zkeys)?;
    let c = count(&hv);
    let chosen = if c >= n {
        "V"
    } else if c + 2 <= n {
        "L+V+L'"
    } else if mode.holds(linker.lk(&t, &v)?) {
        trace.push(format!("odd step n={n}: V links T"));
        "V"
    } else {
        // r: keys not linking V that link L''; s: keys linking V that link L'';
        // t: of those s, the ones whose class cancels in V+L+L'+L''
        let lk_lpp = linker.lk_row(&lpp, &zkeys)?;
        let lk_own: Vec<i64> = zkeys
            .iter()
            .enumerate()
            .map(|(i, z)| linker.lk(if i < left.keys.len() { l } else { lp }, z))
            .collect::<Result<_, _>>()?;
        let lk_v = linker.lk_row(&v, &zkeys)?;
        let r = (0..zkeys.len()).filter(|&i| !hv[i] && mode.holds(lk_lpp[i])).count();
        let s = (0..zkeys.len()).filter(|&i| hv[i] && mode.holds(lk_lpp[i])).count();
        let tt = (0..zkeys.len())
            .filter(|&i| hv[i] && mode.holds(lk_lpp[i]) && !mode.holds(lk_own[i] + lk_v[i] + lk_lpp[i]))
            .count();
        let with_lpp = count(&holding(linker, mode, cands.get("V+L''"), &keys)?);
        let with_all = count(&holding(linker, mode, cands.get("V+L+L'+L''"), &keys)?);
        trace.push(format!(
            "odd step n={n}: V links {c} keys, not T; r={r} s={s} t={tt}; V+L'' links {with_lpp}, V+L+L'+L'' links {with_all}"
        ));
        if with_lpp >= with_all {
            "V+L''"
        } else {
            "V+L+L'+L''"
        }
    };
    trace.push(format!("odd step n={n}: V links {c} of {} keys -> `{chosen}`", zkeys.len()));
    finish(linker, mode, n, chosen, &cands, &keys, trace)
}

fn ring_rec(linker: &Linker<'_>, v: &[usize], n: usize, mode: Parity) -> Result<KeyLink, ConstructError> {
    match n {
        1 => {
            let cert = find_nonsplit_pair(linker, &v[..6], mode, SearchBudget::triangles_only())?;
            let mut it = cert.components.into_iter();
            Ok(KeyLink { l: it.next().unwrap(), keys: vec![it.next().unwrap()], trace: cert.case_trace })
        }
        2 => {
            let cert = find_three_component_base(linker, &v[..10], SearchBudget::default())?;
            let mut it = cert.components.into_iter();
            Ok(KeyLink { l: it.next().unwrap(), keys: it.collect(), trace: cert.case_trace })
        }
        _ => {
            let h = to_u64(&alpha(n as u64 - 1)?)? as usize;
            let (left, right) =
                rayon::join(|| ring_rec(linker, &v[..h], n - 1, mode), || ring_rec(linker, &v[h..2 * h], n - 1, mode));
            let (left, right) = (left?, right?);
            if n.is_multiple_of(2) {
                even_step(linker, mode, n, left, right)
            } else {
                let cert = find_nonsplit_pair(linker, &v[2 * h..2 * h + 6], mode, SearchBudget::triangles_only())?;
                let mut it = cert.components.into_iter();
                let extra = (it.next().unwrap(), it.next().unwrap());
                odd_step(linker, mode, n, left, right, extra)
            }
        }
    }
}

/// An (n+1)-component link L, Z_1..Z_n on the lowest alpha_n vertices with every
/// lk(L, Z_i) nonzero (or odd).
pub fn ring_of_keys(
    linker: &Linker<'_>,
    vertices: &[usize],
    n: usize,
    mode: Parity,
) -> Result<LinkCertificate, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Precondition("n must be at least 1".into()));
    }
    let needed = to_u64(&alpha(n as u64)?)?;
    need_vertices(vertices, needed)?;
    let v = lowest(vertices, needed as usize);
    let kl = ring_rec(linker, &v, n, mode)?;
    let theorem = match mode {
        Parity::Nonzero => TheoremId::RingOfKeys { n: n as u32 },
        Parity::Odd => TheoremId::RingOfKeysOdd { n: n as u32 },
    };
    kl.into_certificate(linker, theorem)
}

/// An (n+1)-component link over vertex blocks: `base` finds a linked pair inside
/// a single block, and alpha'_n blocks are combined by the same even/odd steps as
/// [`ring_of_keys`] (the odd step takes its extra pair from one more block).
pub fn star_recursion(
    linker: &Linker<'_>,
    blocks: &[Vec<usize>],
    n: usize,
    base: &BaseSearcher<'_>,
    mode: Parity,
) -> Result<KeyLink, ConstructError> {
    if n == 0 {
        return Err(ConstructError::Precondition("n must be at least 1".into()));
    }
    let needed = to_u64(&alpha_prime(n as u64)?)?;
    if (blocks.len() as u64) < needed {
        return Err(ConstructError::Precondition(format!(
            "{n} keys need {needed} blocks, got {}",
            blocks.len()
        )));
    }
    if n == 1 {
        let (l, z, trace) = base(linker, &blocks[0])?;
        if !mode.holds(linker.lk(&l, &z)?) {
            return Err(ConstructError::StepFailed("base searcher returned an unlinked pair".into()));
        }
        return Ok(KeyLink { l, keys: vec![z], trace });
    }
    let h = to_u64(&alpha_prime(n as u64 - 1)?)? as usize;
    let (left, right) = rayon::join(
        || star_recursion(linker, &blocks[..h], n - 1, base, mode),
        || star_recursion(linker, &blocks[h..2 * h], n - 1, base, mode),
    );
    let (left, right) = (left?, right?);
    if n.is_multiple_of(2) {
        even_step(linker, mode, n, left, right)
    } else {
        let (lpp, t, _) = base(linker, &blocks[2 * h])?;
        odd_step(linker, mode, n, left, right, (lpp, t))
    }
}

/// Splits the lowest `count * size` vertices into consecutive blocks.
pub(crate) fn make_blocks(vertices: &[usize], count: usize, size: usize) -> Result<Vec<Vec<usize>>, ConstructError> {
    need_vertices(vertices, (count * size) as u64)?;
    let v = lowest(vertices, count * size);
    Ok(v.chunks(size).map(|c| c.to_vec()).collect())
}
