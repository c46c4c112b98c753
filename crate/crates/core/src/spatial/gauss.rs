//! Floating-point Gauss linking integral, used only as an independent cross-check.

use super::cycle::OrientedCycle;
use super::embedding::Embedding;

type V = [f64; 3];

fn sub(a: V, b: V) -> V {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn cross(a: V, b: V) -> V {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
fn dot(a: V, b: V) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn unit(a: V) -> Option<V> {
    let l = dot(a, a).sqrt();
    (l > 0.0).then(|| [a[0] / l, a[1] / l, a[2] / l])
}

/// Signed solid angle (over 4 pi) subtended between segments p1->p2 and p3->p4.
fn segment_pair(p1: V, p2: V, p3: V, p4: V) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let (Some(n1), Some(n2), Some(n3), Some(n4)) = (
        unit(cross(r13, r14)),
        unit(cross(r14, r24)),
        unit(cross(r24, r23)),
        unit(cross(r23, r13)),
    ) else {
        return 0.0;
    };
    let asin = |x: f64| x.clamp(-1.0, 1.0).asin();
    let omega = asin(dot(n1, n2)) + asin(dot(n2, n3)) + asin(dot(n3, n4)) + asin(dot(n4, n1));
    let orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
    omega * orient.signum() / (4.0 * std::f64::consts::PI)
}

/// Gauss linking integral of two disjoint polygons, evaluated segment pair by segment pair.
///
/// Coordinates are centred and scaled to unit size first so that the result does
/// not depend on their magnitude.
pub fn gauss_estimate(emb: &Embedding, a: &OrientedCycle, b: &OrientedCycle) -> f64 {
    let raw = emb.as_f64();
    let used: Vec<usize> = a.vertices().iter().chain(b.vertices()).copied().collect();
    let mut center = [0.0; 3];
    for &v in &used {
        for k in 0..3 {
            center[k] += raw[v][k] / used.len() as f64;
        }
    }
    let scale = used
        .iter()
        .map(|&v| dot(sub(raw[v], center), sub(raw[v], center)).sqrt())
        .fold(0.0f64, f64::max)
        .max(1.0);
    let p = |v: usize| {
        let d = sub(raw[v], center);
        [d[0] / scale, d[1] / scale, d[2] / scale]
    };
    let mut total = 0.0;
    for (a0, a1) in a.edges() {
        for (b0, b1) in b.edges() {
            total += segment_pair(p(a0), p(a1), p(b0), p(b1));
        }
    }
    total
}
