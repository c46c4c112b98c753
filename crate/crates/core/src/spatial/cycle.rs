use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} repeats in cycle")]
    RepeatedVertex(usize),
    #[error("vertex {vertex} out of range for K_{n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("not a simple cycle: {0}")]
    NotSimple(String),
}

/// A simple closed walk in K_n, oriented by the order of `vertices`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct OrientedCycle {
    vertices: Vec<usize>,
}

impl OrientedCycle {
    pub fn new(vertices: Vec<usize>) -> Result<Self, CycleError> {
        if vertices.len() < 3 {
            return Err(CycleError::TooShort(vertices.len()));
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(CycleError::RepeatedVertex(v));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Oriented edges (v_i, v_{i+1}), closing back to v_0.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Canonical representative: smallest vertex first, smaller neighbour second.
    pub fn canonical(&self) -> Self {
        let n = self.vertices.len();
        let (pos, _) = self.vertices.iter().enumerate().min_by_key(|(_, v)| **v).unwrap();
        let next = self.vertices[(pos + 1) % n];
        let prev = self.vertices[(pos + n - 1) % n];
        let mut out = Vec::with_capacity(n);
        if next < prev {
            for i in 0..n {
                out.push(self.vertices[(pos + i) % n]);
            }
        } else {
            for i in 0..n {
                out.push(self.vertices[(pos + n - i) % n]);
            }
        }
        Self { vertices: out }
    }

    /// Whether this cycle runs against its canonical orientation.
    pub fn is_flipped(&self) -> bool {
        let c = self.canonical();
        let pos = self.vertices.iter().position(|&v| v == c.vertices[0]).unwrap();
        self.vertices[(pos + 1) % self.len()] != c.vertices[1]
    }

    pub fn is_disjoint(&self, other: &OrientedCycle) -> bool {
        self.vertices.iter().all(|v| !other.contains(*v))
    }

    pub fn check_range(&self, n: usize) -> Result<(), CycleError> {
        match self.vertices.iter().find(|&&v| v >= n) {
            Some(&vertex) => Err(CycleError::OutOfRange { vertex, n }),
            None => Ok(()),
        }
    }

    /// Position of `v` along the cycle.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&u| u == v)
    }

    /// Vertices from index `from` forward to index `to`, both inclusive, wrapping.
    pub fn arc(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.len();
        let mut out = vec![self.vertices[from % n]];
        let mut i = from % n;
        while i != to % n {
            i = (i + 1) % n;
            out.push(self.vertices[i]);
        }
        out
    }
}

impl fmt::Debug for OrientedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.vertices)
    }
}

impl fmt::Display for OrientedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl TryFrom<Vec<usize>> for OrientedCycle {
    type Error = CycleError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<OrientedCycle> for Vec<usize> {
    fn from(c: OrientedCycle) -> Self {
        c.vertices
    }
}

/// Integer 1-chain on the edges of K_n.
///
/// Keys are stored with the smaller endpoint first; the multiplicity of the
/// reversed edge is the negation of the stored value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientedChain {
    terms: BTreeMap<(usize, usize), i64>,
}

impl OrientedChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_edge(&mut self, from: usize, to: usize, mult: i64) {
        let (key, m) = if from < to { ((from, to), mult) } else { ((to, from), -mult) };
        let entry = self.terms.entry(key).or_insert(0);
        *entry += m;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// Multiplicity of the oriented edge (from, to).
    pub fn get(&self, from: usize, to: usize) -> i64 {
        if from < to {
            self.terms.get(&(from, to)).copied().unwrap_or(0)
        } else {
            -self.terms.get(&(to, from)).copied().unwrap_or(0)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.terms.iter().map(|(&k, &m)| (k, m))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero();
        if k != 0 {
            for (&(a, b), &m) in &self.terms {
                out.terms.insert((a, b), m * k);
            }
        }
        out
    }
}

pub fn chain_of(cycle: &OrientedCycle) -> OrientedChain {
    let mut c = OrientedChain::zero();
    for (a, b) in cycle.edges() {
        c.add_edge(a, b, 1);
    }
    c
}

pub fn chain_add(c1: &OrientedChain, c2: &OrientedChain) -> OrientedChain {
    let mut out = c1.clone();
    for ((a, b), m) in c2.terms() {
        out.add_edge(a, b, m);
    }
    out
}

/// Sum of the chains of several cycles.
pub fn chain_sum<'a>(cycles: impl IntoIterator<Item = &'a OrientedCycle>) -> OrientedChain {
    let mut out = OrientedChain::zero();
    for c in cycles {
        for (a, b) in c.edges() {
            out.add_edge(a, b, 1);
        }
    }
    out
}

/// Reads a chain back as a simple oriented cycle.
///
/// Succeeds iff every multiplicity is +-1 and the support is one closed curve in
/// which each vertex has exactly one incoming and one outgoing edge. The returned
/// cycle starts at the smallest vertex and follows the edge orientations.
pub fn chain_as_cycle(chain: &OrientedChain) -> Result<OrientedCycle, CycleError> {
    if chain.is_zero() {
        return Err(CycleError::NotSimple("empty chain".into()));
    }
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    let mut indeg: BTreeMap<usize, usize> = BTreeMap::new();
    for ((a, b), m) in chain.terms() {
        let (from, to) = match m {
            1 => (a, b),
            -1 => (b, a),
            _ => {
                return Err(CycleError::NotSimple(format!(
                    "edge ({a},{b}) has multiplicity {m}"
                )))
            }
        };
        if next.insert(from, to).is_some() {
            return Err(CycleError::NotSimple(format!("vertex {from} has degree != 2")));
        }
        *indeg.entry(to).or_insert(0) += 1;
    }
    for (&v, &d) in &indeg {
        if d != 1 || !next.contains_key(&v) {
            return Err(CycleError::NotSimple(format!("vertex {v} has degree != 2")));
        }
    }
    if next.len() != indeg.len() {
        let v = next.keys().find(|v| !indeg.contains_key(v)).unwrap();
        return Err(CycleError::NotSimple(format!("vertex {v} has degree != 2")));
    }
    let start = *next.keys().next().unwrap();
    let mut walk = vec![start];
    let mut cur = next[&start];
    while cur != start {
        walk.push(cur);
        cur = next[&cur];
    }
    if walk.len() != next.len() {
        return Err(CycleError::NotSimple(format!(
            "support is disconnected ({} of {} vertices reached)",
            walk.len(),
            next.len()
        )));
    }
    OrientedCycle::new(walk)
}

/// Fuses cycles through chain addition and reads the result as a simple cycle.
pub fn fuse<'a>(cycles: impl IntoIterator<Item = &'a OrientedCycle>) -> Result<OrientedCycle, CycleError> {
    chain_as_cycle(&chain_sum(cycles))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(v: &[usize]) -> OrientedCycle {
        OrientedCycle::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_short_and_repeated() {
        assert_eq!(OrientedCycle::new(vec![1, 2]), Err(CycleError::TooShort(2)));
        assert_eq!(OrientedCycle::new(vec![1, 2, 1]), Err(CycleError::RepeatedVertex(1)));
    }

    #[test]
    fn cycle_plus_reverse_cancels() {
        let c = cyc(&[0, 3, 5, 2]);
        let sum = chain_add(&chain_of(&c), &chain_of(&c.reversed()));
        assert!(sum.is_zero());
        assert!(chain_as_cycle(&sum).is_err());
    }

    #[test]
    fn adjacent_triangles_fuse_to_square() {
        // share edge 1-2, traversed 1->2 and 2->1
        let t1 = cyc(&[0, 1, 2]);
        let t2 = cyc(&[2, 1, 3]);
        let sq = fuse([&t1, &t2]).unwrap();
        assert_eq!(sq.vertices(), &[0, 1, 3, 2]);
    }

    #[test]
    fn same_direction_shared_edge_is_not_simple() {
        let t1 = cyc(&[0, 1, 2]);
        let t2 = cyc(&[1, 2, 3]);
        let err = fuse([&t1, &t2]).unwrap_err();
        assert!(err.to_string().starts_with("not a simple cycle"));
    }

    #[test]
    fn disjoint_supports_are_not_simple() {
        let err = fuse([&cyc(&[0, 1, 2]), &cyc(&[3, 4, 5])]).unwrap_err();
        assert!(err.to_string().contains("disconnected"));
    }

    #[test]
    fn figure_eight_is_not_simple() {
        // two triangles meeting in vertex 0
        let err = fuse([&cyc(&[0, 1, 2]), &cyc(&[0, 3, 4])]).unwrap_err();
        assert!(err.to_string().contains("degree"));
    }

    #[test]
    fn canonical_form_and_flip_flag() {
        let c = cyc(&[4, 2, 7, 1]);
        assert_eq!(c.canonical().vertices(), &[1, 4, 2, 7]);
        assert!(!c.is_flipped());
        assert!(c.reversed().is_flipped());
        assert_eq!(c.reversed().canonical(), c.canonical());
    }

    #[test]
    fn arcs_wrap() {
        let c = cyc(&[10, 11, 12, 13, 14]);
        assert_eq!(c.arc(3, 1), vec![13, 14, 10, 11]);
        assert_eq!(c.arc(2, 2), vec![12]);
    }
}
