use ilink_core::harness::{fixtures, random_embedding, DEFAULT_RANGE};
use ilink_core::spatial::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cyc(v: &[usize]) -> OrientedCycle {
    OrientedCycle::new(v.to_vec()).unwrap()
}

/// Float segment intersection of the projected images, independent of the exact kernel.
fn float_crossings(emb: &Embedding, a: &OrientedCycle, b: &OrientedCycle, dir: &ProjectionDirection) -> usize {
    let pts = emb.as_f64();
    let (sa, sb) = (dir.a_num as f64 / dir.den as f64, dir.b_num as f64 / dir.den as f64);
    let pr = |v: usize| [pts[v][0] + sa * pts[v][2], pts[v][1] + sb * pts[v][2]];
    let orient = |p: [f64; 2], q: [f64; 2], r: [f64; 2]| (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    let mut count = 0;
    for (u, v) in a.edges() {
        for (w, x) in b.edges() {
            let (p0, p1, q0, q1) = (pr(u), pr(v), pr(w), pr(x));
            if orient(p0, p1, q0) * orient(p0, p1, q1) < 0.0 && orient(q0, q1, p0) * orient(q0, q1, p1) < 0.0 {
                count += 1;
            }
        }
    }
    count
}

fn random_disjoint_pair(n: usize, rng: &mut ChaCha8Rng) -> (OrientedCycle, OrientedCycle) {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let la = rng.gen_range(3..=n - 3);
    let lb = rng.gen_range(3..=n - la);
    (cyc(&verts[..la]), cyc(&verts[la..la + lb]))
}

#[test]
fn hopf_fixture_links_once() {
    let (emb, a, b) = fixtures::hopf();
    let lk = linking_number(&emb, &a, &b).unwrap();
    assert_eq!(lk.abs(), 1);
    let g = gauss_estimate(&emb, &a, &b);
    assert!((g - lk as f64).abs() < 1e-6, "gauss {g} vs exact {lk}");
}

#[test]
fn hopf_diagram_has_two_equal_sign_crossings() {
    let (emb, a, b) = fixtures::hopf();
    let dir = generic_direction(&emb, 0).unwrap();
    let d = crossing_diagram(&emb, &a, &b, &dir).unwrap();
    assert_eq!(d.crossings.len(), float_crossings(&emb, &a, &b, &dir));
    assert_eq!(d.crossings.len(), 2);
    assert!(d.crossings.iter().all(|c| c.sign == d.crossings[0].sign));
    assert_eq!(d.crossings.iter().filter(|c| c.over == Over::A).count(), 1);
    assert_eq!(d.total_sign(), 2 * d.linking_number());
}

#[test]
fn split_pair_has_no_crossings() {
    let (emb, a, b) = fixtures::split_pair();
    let dir = generic_direction(&emb, 0).unwrap();
    assert!(crossing_diagram(&emb, &a, &b, &dir).unwrap().crossings.is_empty());
    assert_eq!(linking_number(&emb, &a, &b).unwrap(), 0);
    assert!(gauss_estimate(&emb, &a, &b).abs() < 1e-6);
}

#[test]
fn swapping_cycles_swaps_over_labels() {
    let (emb, a, b) = fixtures::hopf();
    let dir = generic_direction(&emb, 3).unwrap();
    let ab = crossing_diagram(&emb, &a, &b, &dir).unwrap();
    let ba = crossing_diagram(&emb, &b, &a, &dir).unwrap();
    assert_eq!(ab.crossings.len(), ba.crossings.len());
    for x in &ab.crossings {
        let y = ba.crossings.iter().find(|y| y.edge_a == x.edge_b && y.edge_b == x.edge_a).unwrap();
        assert_ne!(x.over, y.over);
        assert_eq!(x.sign, y.sign);
        assert_eq!(x.param_a, y.param_b);
    }
}

#[test]
fn crossing_parameters_are_interior() {
    let emb = random_embedding(10, 17, DEFAULT_RANGE).unwrap();
    let dir = generic_direction(&emb, 5).unwrap();
    let d = crossing_diagram(&emb, &cyc(&[0, 1, 2, 3, 4]), &cyc(&[5, 6, 7, 8, 9]), &dir).unwrap();
    let zero = num_rational::BigRational::from_integer(0.into());
    let one = num_rational::BigRational::from_integer(1.into());
    for c in &d.crossings {
        assert!(c.param_a > zero && c.param_a < one);
        assert!(c.param_b > zero && c.param_b < one);
    }
}

#[test]
fn shared_vertex_is_rejected() {
    let (emb, _, _) = fixtures::hopf();
    let err = linking_number(&emb, &cyc(&[0, 1, 2]), &cyc(&[2, 3, 4])).unwrap_err();
    assert_eq!(err, LinkError::NotDisjoint(2));
    assert!(err.to_string().starts_with("not disjoint"));
}

#[test]
fn vertical_edge_rejects_the_vertical_projection() {
    let emb = Embedding::from_i64(&[[0, 0, 0], [0, 0, 7], [3, 1, 2], [1, 5, 4], [-2, 3, 1]]).unwrap();
    assert!(check_generic(&emb, &ProjectionDirection::VERTICAL).is_err());
    let d = generic_direction(&emb, 0).unwrap();
    assert_ne!(d, ProjectionDirection::VERTICAL);
    assert!(check_generic(&emb, &d).is_ok());
    assert_eq!(generic_direction(&emb, 0).unwrap(), d);
}

#[test]
fn degenerate_direction_is_reported() {
    let emb = Embedding::from_i64(&[[0, 0, 0], [0, 0, 7], [3, 1, 2], [9, 5, 4], [-2, 3, 1], [4, -5, 11]]).unwrap();
    let err = crossing_diagram(&emb, &cyc(&[0, 2, 4]), &cyc(&[1, 3, 5]), &ProjectionDirection::VERTICAL).unwrap_err();
    assert!(err.to_string().starts_with("degenerate direction"));
}

#[test]
fn generic_direction_is_deterministic_and_valid() {
    for seed in 0..5 {
        let emb = random_embedding(9, seed, DEFAULT_RANGE).unwrap();
        let d1 = generic_direction(&emb, seed).unwrap();
        assert_eq!(d1, generic_direction(&emb, seed).unwrap());
        assert!(check_generic(&emb, &d1).is_ok());
    }
}

#[test]
fn gauss_agrees_on_random_triangle_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..100 {
        let emb = random_embedding(6, 1000 + trial, DEFAULT_RANGE).unwrap();
        let (a, b) = random_disjoint_pair(6, &mut rng);
        let lk = linking_number(&emb, &a, &b).unwrap();
        let g = gauss_estimate(&emb, &a, &b);
        assert!((g - lk as f64).abs() < 1e-6, "trial {trial}: gauss {g} vs {lk}");
    }
}

#[test]
fn linker_table_matches_direct_computation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let emb = random_embedding(12, 77, DEFAULT_RANGE).unwrap();
    let table = Linker::new(&emb);
    let direct = Linker::direct(&emb);
    for _ in 0..200 {
        let (a, b) = random_disjoint_pair(12, &mut rng);
        assert_eq!(table.lk(&a, &b).unwrap(), direct.lk(&a, &b).unwrap());
    }
}

#[test]
fn additivity_under_fusion() {
    // two cycles sharing edge 1-2 with opposite orientation fuse into their symmetric difference
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for seed in 0..20 {
        let emb = random_embedding(10, 300 + seed, DEFAULT_RANGE).unwrap();
        let c1 = cyc(&[0, 1, 2, 3]);
        let c2 = cyc(&[2, 1, 4]);
        let c = fuse([&c1, &c2]).unwrap();
        let mut rest: Vec<usize> = (5..10).collect();
        rest.shuffle(&mut rng);
        let d = cyc(&rest[..rng.gen_range(3..=5)]);
        let lk = |x: &OrientedCycle| linking_number(&emb, x, &d).unwrap();
        assert_eq!(lk(&c), lk(&c1) + lk(&c2));
    }
}

#[test]
fn huge_coordinates_link_like_small_ones() {
    let (emb, a, b) = fixtures::hopf();
    let scale = num_bigint::BigInt::from(10).pow(30);
    let shift = num_bigint::BigInt::from(7).pow(41);
    let pts: Vec<Point3> = emb
        .points()
        .iter()
        .map(|p| Point3 { x: &p.x * &scale + &shift, y: &p.y * &scale - &shift, z: &p.z * &scale + &shift })
        .collect();
    let big = Embedding::new(pts).unwrap();
    assert_eq!(linking_number(&big, &a, &b).unwrap(), linking_number(&emb, &a, &b).unwrap());
    let dir = generic_direction(&big, 1).unwrap();
    let d = crossing_diagram(&big, &a, &b, &dir).unwrap();
    assert_eq!(d.linking_number(), linking_number(&emb, &a, &b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariance_antisymmetry_and_oracle(seed in 0u64..10_000, n in 6usize..=10) {
        let emb = random_embedding(n, seed, DEFAULT_RANGE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = random_disjoint_pair(n, &mut rng);
        let lk = linking_number(&emb, &a, &b).unwrap();
        for s in 1..=5u64 {
            let dir = generic_direction(&emb, s).unwrap();
            let d = crossing_diagram(&emb, &a, &b, &dir).unwrap();
            prop_assert_eq!(d.linking_number(), lk);
            prop_assert_eq!(d.crossings.len() % 2, 0);
            prop_assert_eq!(d.total_sign(), 2 * lk);
        }
        prop_assert_eq!(linking_number(&emb, &a.reversed(), &b).unwrap(), -lk);
        prop_assert_eq!(linking_number(&emb, &a, &b.reversed()).unwrap(), -lk);
        prop_assert_eq!(linking_number(&emb, &b, &a).unwrap(), lk);
        let g = gauss_estimate(&emb, &a, &b);
        prop_assert!((g - lk as f64).abs() < 1e-6);
    }
}
