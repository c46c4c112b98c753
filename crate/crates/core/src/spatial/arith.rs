//! Exact integer kernels shared by the fast (`i128`) and unbounded (`BigInt`) paths.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Coordinates with magnitude below this bound use the `i128` kernels.
///
/// With shears bounded by 2^11 every orientation determinant stays below 2^100
/// and every 3x3 determinant of coordinate differences below 2^115.
pub(crate) const FAST_BOUND_BITS: u64 = 36;

/// Integer type the geometric kernels run on.
pub(crate) trait Exact: Clone + Ord + Signed + Integer + Hash + Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

pub(crate) type P3<T> = [T; 3];
pub(crate) type P2<T> = [T; 2];

#[inline]
pub(crate) fn sub3<T: Exact>(a: &P3<T>, b: &P3<T>) -> P3<T> {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

#[inline]
pub(crate) fn cross3<T: Exact>(a: &P3<T>, b: &P3<T>) -> P3<T> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

#[inline]
pub(crate) fn dot3<T: Exact>(a: &P3<T>, b: &P3<T>) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

/// det[a, b, c] with rows a, b, c.
#[inline]
pub(crate) fn det3<T: Exact>(a: &P3<T>, b: &P3<T>, c: &P3<T>) -> T {
    dot3(a, &cross3(b, c))
}

/// Sign of the 2D orientation of (p, q, r): positive for a counter-clockwise turn.
#[inline]
pub(crate) fn orient2<T: Exact>(p: &P2<T>, q: &P2<T>, r: &P2<T>) -> T {
    (q[0].clone() - p[0].clone()) * (r[1].clone() - p[1].clone())
        - (q[1].clone() - p[1].clone()) * (r[0].clone() - p[0].clone())
}

#[inline]
pub(crate) fn cross2<T: Exact>(u: &P2<T>, v: &P2<T>) -> T {
    u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone()
}

#[inline]
pub(crate) fn sub2<T: Exact>(a: &P2<T>, b: &P2<T>) -> P2<T> {
    [a[0].clone() - b[0].clone(), a[1].clone() - b[1].clone()]
}

/// For r collinear with segment pq: whether r lies in the closed segment.
#[inline]
pub(crate) fn within_box<T: Exact>(p: &P2<T>, q: &P2<T>, r: &P2<T>) -> bool {
    (0..2).all(|k| {
        let (lo, hi) = if p[k] <= q[k] { (&p[k], &q[k]) } else { (&q[k], &p[k]) };
        *lo <= r[k] && r[k] <= *hi
    })
}

#[inline]
pub(crate) fn signum<T: Exact>(v: &T) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Divides out the content and fixes the sign so that parallel vectors compare equal.
pub(crate) fn primitive_direction<T: Exact>(v: P3<T>) -> P3<T> {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g.is_zero() {
        return v;
    }
    let mut out = [v[0].clone() / g.clone(), v[1].clone() / g.clone(), v[2].clone() / g];
    let first = out.iter().find(|c| !c.is_zero()).cloned();
    if first.is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

pub(crate) fn fits_fast(v: &BigInt) -> Option<i128> {
    if v.bits() < FAST_BOUND_BITS {
        v.to_i128()
    } else {
        None
    }
}
