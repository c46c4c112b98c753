use itertools::Itertools;

use crate::spatial::OrientedCycle;

/// Lazily yields every cycle on `pool` with length in `min_len..=max_len`, once each.
///
/// Order: by length, then by vertex subset (lexicographic in the sorted pool), then
/// by the lexicographic order of the canonical vertex sequence. Every cycle is in
/// canonical orientation: smallest vertex first, smaller neighbour second.
pub fn enumerate_cycles(pool: &[usize], min_len: usize, max_len: usize) -> impl Iterator<Item = OrientedCycle> {
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let max_len = max_len.min(pool.len());
    (min_len.max(3)..=max_len).flat_map(move |k| {
        pool.clone().into_iter().combinations(k).flat_map(move |subset| {
            let first = subset[0];
            let rest = subset[1..].to_vec();
            rest.into_iter().permutations(k - 1).filter(|p| p[0] < p[p.len() - 1]).map(move |p| {
                let mut v = Vec::with_capacity(k);
                v.push(first);
                v.extend(p);
                OrientedCycle::new(v).expect("distinct vertices")
            })
        })
    })
}

/// Number of cycles of length `k` on `p` vertices: C(p, k)(k-1)!/2.
pub fn cycle_count(p: u64, k: u64) -> u64 {
    if k < 3 || k > p {
        return 0;
    }
    let mut c: u64 = 1;
    for i in 0..k {
        c = c * (p - i) / (i + 1);
    }
    (1..k).product::<u64>() / 2 * c
}

/// Shape of the disjoint cycle tuples to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TupleSpec {
    pub arity: usize,
    pub min_len: usize,
    pub max_len: usize,
    /// When set, only tuples whose lengths add up to exactly this many vertices.
    pub total: Option<usize>,
}

impl TupleSpec {
    pub fn new(arity: usize, min_len: usize, max_len: usize) -> Self {
        TupleSpec { arity, min_len: min_len.max(3), max_len, total: None }
    }

    pub fn with_total(mut self, total: usize) -> Self {
        self.total = Some(total);
        self
    }
}

type Key = (usize, Vec<usize>);

fn key(c: &OrientedCycle) -> Key {
    let mut s = c.vertices().to_vec();
    s.sort_unstable();
    (c.len(), s)
}

/// Lazily yields every unordered tuple of pairwise vertex-disjoint cycles on `pool`.
///
/// Inside a tuple the cycles are sorted by (length, sorted vertex set), so each
/// unordered tuple appears exactly once; tuples come out ordered by their first
/// cycle in [`enumerate_cycles`] order, then by the second, and so on.
pub fn enumerate_disjoint_tuples(pool: &[usize], spec: TupleSpec) -> Box<dyn Iterator<Item = Vec<OrientedCycle>>> {
    let mut pool = pool.to_vec();
    pool.sort_unstable();
    pool.dedup();
    tuples(pool, spec.arity, spec.min_len.max(3), spec.max_len, spec.total, None)
}

fn tuples(
    pool: Vec<usize>,
    arity: usize,
    min_len: usize,
    max_len: usize,
    total: Option<usize>,
    prev: Option<Key>,
) -> Box<dyn Iterator<Item = Vec<OrientedCycle>>> {
    if arity == 0 {
        return if total.unwrap_or(0) == 0 { Box::new(std::iter::once(Vec::new())) } else { Box::new(std::iter::empty()) };
    }
    let lo = prev.as_ref().map_or(min_len, |k| k.0.max(min_len));
    // later cycles are at least as long as this one
    let mut hi = max_len.min(pool.len() / arity);
    if let Some(t) = total {
        hi = hi.min(t / arity);
    }
    if lo > hi {
        return Box::new(std::iter::empty());
    }
    let lens: Vec<usize> = match total {
        Some(t) if arity == 1 => {
            if (lo..=hi).contains(&t) {
                vec![t]
            } else {
                vec![]
            }
        }
        _ => (lo..=hi).collect(),
    };
    Box::new(lens.into_iter().flat_map(move |len| {
        let pool = pool.clone();
        let prev = prev.clone();
        enumerate_cycles(&pool, len, len)
            .filter(move |c| prev.as_ref().is_none_or(|p| key(c) > *p))
            .flat_map(move |c| {
                let rest: Vec<usize> = pool.iter().copied().filter(|&v| !c.contains(v)).collect();
                let k = key(&c);
                let total = total.map(|t| t - c.len());
                tuples(rest, arity - 1, min_len, max_len, total, Some(k)).map(move |mut tail| {
                    tail.insert(0, c.clone());
                    tail
                })
            })
    }))
}
