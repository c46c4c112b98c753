//! Sheared orthographic projections and their genericity predicates.

use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::arith::{cross2, det3, orient2, signum, sub2, sub3, within_box, Exact, P2, P3};
use super::embedding::{with_coords, Embedding};

/// Largest numerator magnitude drawn for a shear candidate.
const SHEAR_RANGE: i64 = 1024;
/// Common denominator of the random shear candidates (prime).
const SHEAR_DEN: i64 = 1031;
/// Default number of candidates tried before giving up.
pub const DEFAULT_DIRECTION_CAP: usize = 256;

/// The projection (x, y, z) -> (x + a z, y + b z) with a = a_num/den, b = b_num/den.
///
/// Heights are measured by z; the viewer sits at z = +infinity, so a strand with
/// larger height at a crossing is the over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectionDirection {
    pub a_num: i64,
    pub b_num: i64,
    pub den: i64,
}

impl ProjectionDirection {
    pub const VERTICAL: ProjectionDirection = ProjectionDirection { a_num: 0, b_num: 0, den: 1 };

    pub fn new(a_num: i64, b_num: i64, den: i64) -> Self {
        assert!(den > 0, "shear denominator must be positive");
        assert!(
            a_num.abs() <= 2 * SHEAR_DEN && b_num.abs() <= 2 * SHEAR_DEN && den <= 2 * SHEAR_DEN,
            "shear components are bounded to keep the i128 kernels exact"
        );
        Self { a_num, b_num, den }
    }

    pub fn a(&self) -> BigRational {
        BigRational::new(self.a_num.into(), self.den.into())
    }

    pub fn b(&self) -> BigRational {
        BigRational::new(self.b_num.into(), self.den.into())
    }

    /// Projected point scaled by `den`, so it stays integral.
    #[inline]
    pub(crate) fn project<T: Exact>(&self, p: &P3<T>) -> P2<T> {
        let den = T::from_i64(self.den);
        [
            den.clone() * p[0].clone() + T::from_i64(self.a_num) * p[2].clone(),
            den * p[1].clone() + T::from_i64(self.b_num) * p[2].clone(),
        ]
    }
}

impl fmt::Display for ProjectionDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shear ({}/{}, {}/{})", self.a_num, self.den, self.b_num, self.den)
    }
}

/// The deterministic candidate sequence for a seed.
///
/// Seed 0 starts with the vertical projection; every other entry is a random shear
/// drawn from a ChaCha stream keyed by the seed.
pub fn direction_candidates(seed: u64) -> impl Iterator<Item = ProjectionDirection> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_d1ec_7104_0000);
    let mut first = seed == 0;
    std::iter::from_fn(move || {
        if first {
            first = false;
            return Some(ProjectionDirection::VERTICAL);
        }
        let a = rng.gen_range(-SHEAR_RANGE..=SHEAR_RANGE);
        let b = rng.gen_range(-SHEAR_RANGE..=SHEAR_RANGE);
        Some(ProjectionDirection::new(a, b, SHEAR_DEN))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Degeneracy {
    #[error("vertices {0} and {1} project to the same point")]
    CoincidentVertices(usize, usize),
    #[error("vertex {vertex} projects into edge ({},{})", .edge.0, .edge.1)]
    VertexOnEdge { vertex: usize, edge: (usize, usize) },
    #[error("three edges ({},{}), ({},{}), ({},{}) project through one point", .0.0, .0.1, .1.0, .1.1, .2.0, .2.1)]
    TriplePoint((usize, usize), (usize, usize), (usize, usize)),
    #[error("strands ({},{}) and ({},{}) have equal height at their crossing", .0.0, .0.1, .1.0, .1.1)]
    EqualHeights((usize, usize), (usize, usize)),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DirectionError {
    #[error("no generic direction among the first {0} candidates")]
    CapExceeded(usize),
}

/// Outcome of intersecting the images of two vertex-disjoint oriented edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum PairCrossing<T> {
    Apart,
    Cross {
        /// Sign of cross2(de, df) in the projection plane.
        frame: i8,
        /// Whether the first edge is the over-strand.
        first_over: bool,
        /// Parameter along e: s_num / s_den, likewise t along f.
        s: (T, T),
        t: (T, T),
    },
}

/// Intersects projected edges e = (p0, p1) and f = (q0, q1), which share no vertex.
pub(crate) fn pair_crossing<T: Exact>(
    dir: &ProjectionDirection,
    e: (&P3<T>, &P3<T>),
    f: (&P3<T>, &P3<T>),
    labels: ((usize, usize), (usize, usize)),
) -> Result<PairCrossing<T>, Degeneracy> {
    let (p0, p1) = (dir.project(e.0), dir.project(e.1));
    let (q0, q1) = (dir.project(f.0), dir.project(f.1));
    let o1 = orient2(&p0, &p1, &q0);
    let o2 = orient2(&p0, &p1, &q1);
    let o3 = orient2(&q0, &q1, &p0);
    let o4 = orient2(&q0, &q1, &p1);
    let ((e0, e1), (f0, f1)) = labels;
    let touches = |o: &T, a: &P2<T>, b: &P2<T>, r: &P2<T>| o.is_zero() && within_box(a, b, r);
    if touches(&o1, &p0, &p1, &q0) {
        return Err(vertex_on(f0, &[&p0, &p1], &q0, (e0, e1)));
    }
    if touches(&o2, &p0, &p1, &q1) {
        return Err(vertex_on(f1, &[&p0, &p1], &q1, (e0, e1)));
    }
    if touches(&o3, &q0, &q1, &p0) {
        return Err(vertex_on(e0, &[&q0, &q1], &p0, (f0, f1)));
    }
    if touches(&o4, &q0, &q1, &p1) {
        return Err(vertex_on(e1, &[&q0, &q1], &p1, (f0, f1)));
    }
    let (s1, s2, s3, s4) = (signum(&o1), signum(&o2), signum(&o3), signum(&o4));
    if s1 * s2 >= 0 || s3 * s4 >= 0 {
        return Ok(PairCrossing::Apart);
    }
    let frame = signum(&cross2(&sub2(&p1, &p0), &sub2(&q1, &q0)));
    let de = sub3(e.1, e.0);
    let df = sub3(f.1, f.0);
    let spatial = signum(&det3(&sub3(e.0, f.0), &de, &df));
    if spatial == 0 {
        return Err(Degeneracy::EqualHeights((e0, e1), (f0, f1)));
    }
    // e sits above f by lambda * (projection direction), sign(lambda) = spatial * frame
    let first_over = spatial * frame > 0;
    Ok(PairCrossing::Cross {
        frame,
        first_over,
        s: (o3.clone(), o3 - o4),
        t: (o1.clone(), o1 - o2),
    })
}

fn vertex_on<T: Exact>(
    vertex: usize,
    ends: &[&P2<T>; 2],
    r: &P2<T>,
    label: (usize, usize),
) -> Degeneracy {
    if ends[0] == r {
        Degeneracy::CoincidentVertices(label.0, vertex)
    } else if ends[1] == r {
        Degeneracy::CoincidentVertices(label.1, vertex)
    } else {
        Degeneracy::VertexOnEdge { vertex, edge: label }
    }
}

/// Full genericity predicate of `dir` for the whole embedding.
///
/// Checks: distinct vertex images, no vertex image inside an edge image (which also
/// excludes overlapping edge images), no three edge images through one point, and
/// distinct heights at every transversal crossing.
pub fn check_generic(emb: &Embedding, dir: &ProjectionDirection) -> Result<(), Degeneracy> {
    with_coords!(emb.store(), |c| check_generic_impl(c, dir))
}

fn check_generic_impl<T: Exact>(pts: &[P3<T>], dir: &ProjectionDirection) -> Result<(), Degeneracy> {
    let n = pts.len();
    let proj: Vec<P2<T>> = pts.iter().map(|p| dir.project(p)).collect();
    let mut seen = std::collections::HashMap::with_capacity(n);
    for (i, p) in proj.iter().enumerate() {
        if let Some(j) = seen.insert(p.clone(), i) {
            return Err(Degeneracy::CoincidentVertices(j, i));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for v in 0..n {
                if v == a || v == b {
                    continue;
                }
                if orient2(&proj[a], &proj[b], &proj[v]).is_zero() && within_box(&proj[a], &proj[b], &proj[v]) {
                    return Err(Degeneracy::VertexOnEdge { vertex: v, edge: (a, b) });
                }
            }
        }
    }
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    // crossing parameters along each edge, as reduced fractions
    let mut along: Vec<HashSet<(T, T)>> = vec![HashSet::new(); edges.len()];
    let mut witness: Vec<Vec<((T, T), usize)>> = vec![Vec::new(); edges.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let cr = pair_crossing(dir, (&pts[a], &pts[b]), (&pts[c], &pts[d]), ((a, b), (c, d)))?;
            if let PairCrossing::Cross { s, t, .. } = cr {
                for (edge, other, frac) in [(i, j, reduce(s)), (j, i, reduce(t))] {
                    if !along[edge].insert(frac.clone()) {
                        let k = witness[edge].iter().find(|(f, _)| *f == frac).unwrap().1;
                        return Err(Degeneracy::TriplePoint(edges[edge], edges[k], edges[other]));
                    }
                    witness[edge].push((frac, other));
                }
            }
        }
    }
    Ok(())
}

fn reduce<T: Exact>((num, den): (T, T)) -> (T, T) {
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / g.clone(), den / g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    (n, d)
}

/// First candidate for `seed` that is generic for the whole embedding.
pub fn generic_direction(emb: &Embedding, seed: u64) -> Result<ProjectionDirection, DirectionError> {
    generic_direction_capped(emb, seed, DEFAULT_DIRECTION_CAP)
}

pub fn generic_direction_capped(
    emb: &Embedding,
    seed: u64,
    cap: usize,
) -> Result<ProjectionDirection, DirectionError> {
    direction_candidates(seed)
        .take(cap)
        .find(|d| check_generic(emb, d).is_ok())
        .ok_or(DirectionError::CapExceeded(cap))
}

pub(crate) fn to_rational<T: Exact>((num, den): &(T, T)) -> BigRational {
    BigRational::new(num.to_big(), den.to_big())
}
