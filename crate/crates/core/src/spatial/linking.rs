//! Crossing diagrams and exact linking numbers.

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use super::arith::{Exact, P3};
use super::cycle::{CycleError, OrientedCycle};
use super::embedding::{with_coords, Embedding};
use super::projection::{
    direction_candidates, generic_direction, pair_crossing, to_rational, Degeneracy, PairCrossing,
    ProjectionDirection, DEFAULT_DIRECTION_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("not disjoint: cycles share vertex {0}")]
    NotDisjoint(usize),
    #[error("degenerate direction: {0}")]
    DegenerateDirection(Degeneracy),
    #[error("no direction generic for this pair among {0} candidates")]
    NoGenericDirection(usize),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Which cycle of the queried pair carries the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Over {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Oriented edge of cycle A.
    pub edge_a: (usize, usize),
    /// Oriented edge of cycle B.
    pub edge_b: (usize, usize),
    /// Orientation of the (over tangent, under tangent) frame.
    pub sign: i8,
    pub over: Over,
    /// Position of the crossing along `edge_a`, strictly inside (0, 1).
    pub param_a: BigRational,
    /// Position of the crossing along `edge_b`, strictly inside (0, 1).
    pub param_b: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingDiagram {
    pub direction: ProjectionDirection,
    pub crossings: Vec<Crossing>,
}

impl CrossingDiagram {
    /// Sum of signs over crossings where A is the over-strand.
    pub fn linking_number(&self) -> i64 {
        self.crossings.iter().filter(|c| c.over == Over::A).map(|c| c.sign as i64).sum()
    }

    /// Sum of signs over all inter-cycle crossings, equal to twice the linking number.
    pub fn total_sign(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }
}

fn check_pair(emb: &Embedding, a: &OrientedCycle, b: &OrientedCycle) -> Result<(), LinkError> {
    a.check_range(emb.n())?;
    b.check_range(emb.n())?;
    match a.vertices().iter().find(|v| b.contains(**v)) {
        Some(&v) => Err(LinkError::NotDisjoint(v)),
        None => Ok(()),
    }
}

/// All transversal crossings between edges of A and edges of B in the projection.
///
/// Fails with a degeneracy if any vertex of one cycle projects onto the other
/// cycle, or if three edges of A and B project through a common point.
pub fn crossing_diagram(
    emb: &Embedding,
    a: &OrientedCycle,
    b: &OrientedCycle,
    dir: &ProjectionDirection,
) -> Result<CrossingDiagram, LinkError> {
    check_pair(emb, a, b)?;
    let crossings = with_coords!(emb.store(), |c| diagram_impl(c, a, b, dir))
        .map_err(LinkError::DegenerateDirection)?;
    Ok(CrossingDiagram { direction: *dir, crossings })
}

fn diagram_impl<T: Exact>(
    pts: &[P3<T>],
    a: &OrientedCycle,
    b: &OrientedCycle,
    dir: &ProjectionDirection,
) -> Result<Vec<Crossing>, Degeneracy> {
    let mut out: Vec<Crossing> = Vec::new();
    for ea in a.edges() {
        for eb in b.edges() {
            let cr = pair_crossing(dir, (&pts[ea.0], &pts[ea.1]), (&pts[eb.0], &pts[eb.1]), (ea, eb))?;
            if let PairCrossing::Cross { frame, first_over, s, t } = cr {
                let (sign, over) = if first_over { (frame, Over::A) } else { (-frame, Over::B) };
                out.push(Crossing {
                    edge_a: ea,
                    edge_b: eb,
                    sign,
                    over,
                    param_a: to_rational(&s),
                    param_b: to_rational(&t),
                });
            }
        }
    }
    // a point shared by two crossings on one edge means three edges meet there
    for (i, x) in out.iter().enumerate() {
        for y in &out[i + 1..] {
            if (x.edge_a == y.edge_a && x.param_a == y.param_a) || (x.edge_b == y.edge_b && x.param_b == y.param_b) {
                let third = if x.edge_a == y.edge_a { y.edge_b } else { y.edge_a };
                return Err(Degeneracy::TriplePoint(x.edge_a, x.edge_b, third));
            }
        }
    }
    Ok(out)
}

/// Contribution of "e passes over f" for oriented edges e, f, or a degeneracy.
#[inline]
fn over_contribution<T: Exact>(
    pts: &[P3<T>],
    dir: &ProjectionDirection,
    e: (usize, usize),
    f: (usize, usize),
) -> Result<i8, Degeneracy> {
    match pair_crossing(dir, (&pts[e.0], &pts[e.1]), (&pts[f.0], &pts[f.1]), (e, f))? {
        PairCrossing::Cross { frame, first_over: true, .. } => Ok(frame),
        _ => Ok(0),
    }
}

fn lk_impl<T: Exact>(
    pts: &[P3<T>],
    a: &OrientedCycle,
    b: &OrientedCycle,
    dir: &ProjectionDirection,
) -> Result<i64, Degeneracy> {
    let mut sum = 0i64;
    for ea in a.edges() {
        for eb in b.edges() {
            sum += over_contribution(pts, dir, ea, eb)? as i64;
        }
    }
    Ok(sum)
}

/// Linking number of two vertex-disjoint cycles in a fixed projection.
pub fn linking_number_in(
    emb: &Embedding,
    a: &OrientedCycle,
    b: &OrientedCycle,
    dir: &ProjectionDirection,
) -> Result<i64, LinkError> {
    check_pair(emb, a, b)?;
    with_coords!(emb.store(), |c| lk_impl(c, a, b, dir)).map_err(LinkError::DegenerateDirection)
}

/// Linking number of two vertex-disjoint cycles.
///
/// Uses the first direction of the seed-0 candidate sequence under which no vertex
/// of one cycle projects onto the other cycle; the result does not depend on that
/// choice.
pub fn linking_number(emb: &Embedding, a: &OrientedCycle, b: &OrientedCycle) -> Result<i64, LinkError> {
    check_pair(emb, a, b)?;
    with_coords!(emb.store(), |c| {
        for dir in direction_candidates(0).take(DEFAULT_DIRECTION_CAP) {
            if let Ok(v) = lk_impl(c, a, b, &dir) {
                return Ok(v);
            }
        }
        Err(LinkError::NoGenericDirection(DEFAULT_DIRECTION_CAP))
    })
}

/// Embeddings up to this many vertices get a dense edge-pair table.
pub const TABLE_MAX_VERTICES: usize = 48;

/// Repeated linking-number queries against one embedding.
///
/// Small embeddings precompute "edge over edge" contributions for every ordered
/// pair of disjoint edges under one globally generic direction, after which a query
/// costs |A| * |B| table lookups. Larger embeddings fall back to `linking_number`.
pub struct Linker<'a> {
    emb: &'a Embedding,
    table: Option<EdgeTable>,
}

struct EdgeTable {
    n: usize,
    /// contribution[(u * n + v) * n * n + (w * n + x)] for e = u->v over f = w->x
    over: Vec<i8>,
}

impl EdgeTable {
    fn build(emb: &Embedding, dir: &ProjectionDirection) -> Result<Self, Degeneracy> {
        let n = emb.n();
        let mut over = vec![0i8; n * n * n * n];
        with_coords!(emb.store(), |c| {
            for u in 0..n {
                for v in u + 1..n {
                    for w in 0..n {
                        if w == u || w == v {
                            continue;
                        }
                        for x in w + 1..n {
                            if x == u || x == v {
                                continue;
                            }
                            let val = over_contribution(c, dir, (u, v), (w, x))?;
                            if val != 0 {
                                // reversing either edge flips the frame
                                over[(u * n + v) * n * n + w * n + x] = val;
                                over[(v * n + u) * n * n + w * n + x] = -val;
                                over[(u * n + v) * n * n + x * n + w] = -val;
                                over[(v * n + u) * n * n + x * n + w] = val;
                            }
                        }
                    }
                }
            }
            Ok::<(), Degeneracy>(())
        })?;
        Ok(Self { n, over })
    }

    #[inline]
    fn get(&self, e: (usize, usize), f: (usize, usize)) -> i8 {
        let n = self.n;
        self.over[(e.0 * n + e.1) * n * n + f.0 * n + f.1]
    }
}

impl<'a> Linker<'a> {
    pub fn new(emb: &'a Embedding) -> Self {
        let table = if emb.n() <= TABLE_MAX_VERTICES {
            generic_direction(emb, 0).ok().and_then(|d| EdgeTable::build(emb, &d).ok())
        } else {
            None
        };
        Self { emb, table }
    }

    /// A linker that never builds the table.
    pub fn direct(emb: &'a Embedding) -> Self {
        Self { emb, table: None }
    }

    pub fn embedding(&self) -> &'a Embedding {
        self.emb
    }

    pub fn lk(&self, a: &OrientedCycle, b: &OrientedCycle) -> Result<i64, LinkError> {
        match &self.table {
            Some(t) => {
                check_pair(self.emb, a, b)?;
                let mut sum = 0i64;
                for ea in a.edges() {
                    for eb in b.edges() {
                        sum += t.get(ea, eb) as i64;
                    }
                }
                Ok(sum)
            }
            None => linking_number(self.emb, a, b),
        }
    }

    /// Linking number of A against each cycle of `others`.
    pub fn lk_row(&self, a: &OrientedCycle, others: &[OrientedCycle]) -> Result<Vec<i64>, LinkError> {
        others.iter().map(|b| self.lk(a, b)).collect()
    }

    /// Full symmetric linking matrix with zero diagonal.
    pub fn matrix(&self, cycles: &[OrientedCycle]) -> Result<Vec<Vec<i64>>, LinkError> {
        let k = cycles.len();
        let mut m = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let v = self.lk(&cycles[i], &cycles[j])?;
                m[i][j] = v;
                m[j][i] = v;
            }
        }
        Ok(m)
    }
}
