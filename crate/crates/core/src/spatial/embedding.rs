use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::arith::{cross3, fits_fast, primitive_direction, sub3, Exact, P3};

/// A lattice point in 3-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl Point3 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Self { x: x.into(), y: y.into(), z: z.into() }
    }

    fn to_array(&self) -> [BigInt; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Reasons a coordinate list fails to be a general-position embedding of K_n.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("empty embedding")]
    Empty,
    #[error("duplicate vertices ({0},{1})")]
    DuplicateVertices(usize, usize),
    #[error("collinear triple ({0},{1},{2})")]
    CollinearTriple(usize, usize, usize),
    #[error("coplanar quadruple ({0},{1},{2},{3})")]
    CoplanarQuadruple(usize, usize, usize, usize),
}

impl Violation {
    /// Vertex indices named by the violation.
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Violation::Empty => vec![],
            Violation::DuplicateVertices(a, b) => vec![a, b],
            Violation::CollinearTriple(a, b, c) => vec![a, b, c],
            Violation::CoplanarQuadruple(a, b, c, d) => vec![a, b, c, d],
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum CoordStore {
    Fast(Vec<P3<i128>>),
    Big(Vec<P3<BigInt>>),
}

impl CoordStore {
    fn build(points: &[Point3]) -> Self {
        let fast: Option<Vec<P3<i128>>> = points
            .iter()
            .map(|p| Some([fits_fast(&p.x)?, fits_fast(&p.y)?, fits_fast(&p.z)?]))
            .collect();
        match fast {
            Some(v) => CoordStore::Fast(v),
            None => CoordStore::Big(points.iter().map(Point3::to_array).collect()),
        }
    }
}

/// Dispatches a generic kernel over the coordinate representation.
macro_rules! with_coords {
    ($store:expr, |$c:ident| $body:expr) => {
        match $store {
            $crate::spatial::embedding::CoordStore::Fast($c) => $body,
            $crate::spatial::embedding::CoordStore::Big($c) => $body,
        }
    };
}
pub(crate) use with_coords;

/// A straight-line embedding of the complete graph on `coords.len()` vertices.
///
/// Construction checks general position: distinct points, no three collinear and
/// no four coplanar. Under those conditions every pair of vertex-disjoint edges is
/// disjoint in space and edges sharing a vertex meet only there.
#[derive(Clone, Debug)]
pub struct Embedding {
    points: Vec<Point3>,
    store: CoordStore,
}

impl Embedding {
    pub fn new(points: Vec<Point3>) -> Result<Self, Violation> {
        let store = CoordStore::build(&points);
        with_coords!(&store, |c| check_general_position(c))?;
        Ok(Self { points, store })
    }

    pub fn from_i64(coords: &[[i64; 3]]) -> Result<Self, Violation> {
        Self::new(coords.iter().map(|c| Point3::new(c[0], c[1], c[2])).collect())
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn point(&self, v: usize) -> &Point3 {
        &self.points[v]
    }

    pub(crate) fn store(&self) -> &CoordStore {
        &self.store
    }

    /// The embedding restricted to the given vertices, re-indexed in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self, Violation> {
        Self::new(vertices.iter().map(|&v| self.points[v].clone()).collect())
    }

    pub fn as_f64(&self) -> Vec<[f64; 3]> {
        use num_traits::ToPrimitive;
        self.points
            .iter()
            .map(|p| {
                [
                    p.x.to_f64().unwrap_or(f64::NAN),
                    p.y.to_f64().unwrap_or(f64::NAN),
                    p.z.to_f64().unwrap_or(f64::NAN),
                ]
            })
            .collect()
    }
}

/// Checks the three general-position invariants of an embedding.
///
/// For every pair i < j, the normals (p_j - p_i) x (p_k - p_i) over k > j are reduced
/// to primitive directions; a zero normal is a collinear triple and a repeated
/// direction is a coplanar quadruple. Runs in O(n^3) expected time.
pub fn validate_embedding(points: &[Point3]) -> Result<(), Violation> {
    with_coords!(&CoordStore::build(points), |c| check_general_position(c))
}

fn check_general_position<T: Exact>(pts: &[P3<T>]) -> Result<(), Violation> {
    let n = pts.len();
    if n == 0 {
        return Err(Violation::Empty);
    }
    let mut seen: HashMap<&P3<T>, usize> = HashMap::with_capacity(n);
    for (i, p) in pts.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            return Err(Violation::DuplicateVertices(j, i));
        }
        seen.insert(p, i);
    }
    let mut planes: HashMap<P3<T>, usize> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = sub3(&pts[j], &pts[i]);
            planes.clear();
            for k in j + 1..n {
                let normal = cross3(&d, &sub3(&pts[k], &pts[i]));
                if normal.iter().all(|c| c.is_zero()) {
                    return Err(Violation::CollinearTriple(i, j, k));
                }
                if let Some(k0) = planes.insert(primitive_direction(normal), k) {
                    return Err(Violation::CoplanarQuadruple(i, j, k0, k));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_basis_is_accepted() {
        let e = Embedding::from_i64(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(e.is_ok());
    }

    #[test]
    fn scalar_multiples_are_collinear() {
        let err = Embedding::from_i64(&[[0, 0, 0], [1, 1, 1], [2, 2, 2], [5, -3, 7]]).unwrap_err();
        assert_eq!(err, Violation::CollinearTriple(0, 1, 2));
        assert_eq!(err.to_string(), "collinear triple (0,1,2)");
    }

    #[test]
    fn flat_square_is_coplanar() {
        let err = Embedding::from_i64(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap_err();
        assert_eq!(err, Violation::CoplanarQuadruple(0, 1, 2, 3));
    }

    #[test]
    fn duplicates_are_reported() {
        let err = Embedding::from_i64(&[[0, 0, 0], [1, 2, 3], [1, 2, 3]]).unwrap_err();
        assert_eq!(err, Violation::DuplicateVertices(1, 2));
        assert_eq!(Embedding::new(vec![]).unwrap_err(), Violation::Empty);
    }

    #[test]
    fn huge_coordinates_take_the_unbounded_path() {
        let big = BigInt::from(10).pow(40);
        let pts = vec![
            Point3::new(0, 0, 0),
            Point3::new(big.clone(), 0, 0),
            Point3::new(0, big.clone(), 0),
            Point3::new(0, 0, big.clone()),
        ];
        let e = Embedding::new(pts.clone()).unwrap();
        assert!(matches!(e.store(), CoordStore::Big(_)));
        let mut flat = pts;
        flat[3] = Point3::new(big.clone(), big, 0);
        assert!(matches!(validate_embedding(&flat), Err(Violation::CoplanarQuadruple(..))));
    }

    #[test]
    fn coplanar_far_apart_in_index_order() {
        // vertices 1, 3, 4, 6 share the plane x = 7
        let e = Embedding::from_i64(&[
            [0, 0, 0],
            [7, 1, 2],
            [3, 9, 1],
            [7, 5, 11],
            [7, -4, 3],
            [-2, 3, 17],
            [7, 13, -6],
        ]);
        assert_eq!(e.unwrap_err(), Violation::CoplanarQuadruple(1, 3, 4, 6));
    }
}
