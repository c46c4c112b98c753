use ilink_core::sequences::*;
use num_bigint::BigUint;
use rayon::prelude::*;

fn b(v: u128) -> BigUint {
    BigUint::from(v)
}

/// Plain u128 evaluation of both recursions, written out independently.
fn naive_alphas(upto: usize) -> (Vec<u128>, Vec<u128>) {
    let mut a = vec![0u128, 6, 10];
    let mut ap = vec![0u128, 1];
    while a.len() <= upto {
        let k = a.len();
        a.push(if k % 2 == 1 { 2 * a[k - 1] + 6 } else { 2 * a[k - 1] });
    }
    while ap.len() <= upto {
        let k = ap.len();
        ap.push(if k % 2 == 0 { 2 * ap[k - 1] } else { 2 * ap[k - 1] + 1 });
    }
    (a, ap)
}

#[test]
fn alpha_values() {
    assert_eq!(alpha(1).unwrap(), b(6));
    assert_eq!(alpha(2).unwrap(), b(10));
    assert_eq!(alpha(3).unwrap(), b(26));
    assert_eq!(alpha(4).unwrap(), b(52));
    assert_eq!(alpha(5).unwrap(), b(110));
    assert_eq!(alpha_odd_closed_form(2), b(6 * (1 + 4 + 16) - 16));
}

#[test]
fn alpha_prime_values() {
    let expect = [1u128, 2, 5, 10, 21, 42, 85];
    for (i, &e) in expect.iter().enumerate() {
        assert_eq!(alpha_prime(i as u64 + 1).unwrap(), b(e));
    }
    assert_eq!(alpha_prime(3).unwrap(), b((16 - 1) / 3));
}

#[test]
fn recursions_agree_with_naive_and_closed_forms() {
    let (a, ap) = naive_alphas(60);
    for n in 1..=60u64 {
        assert_eq!(alpha(n).unwrap(), b(a[n as usize]));
        assert_eq!(alpha_prime(n).unwrap(), b(ap[n as usize]));
    }
    // the alpha closed form starts at index 3; alpha_1 = 6 is set by hand
    assert_eq!(alpha_odd_closed_form(0), b(5));
    for m in 1..=10u64 {
        assert_eq!(alpha(2 * m + 1).unwrap(), alpha_odd_closed_form(m));
    }
    for m in 0..=10u64 {
        assert_eq!(alpha_prime(2 * m + 1).unwrap(), alpha_prime_odd_closed_form(m + 1));
    }
}

#[test]
fn alpha_is_bounded_by_six_alpha_prime() {
    assert_eq!(alpha(1).unwrap(), alpha_prime(1).unwrap() * 6u32);
    for n in 2..=20 {
        assert!(alpha(n).unwrap() < alpha_prime(n).unwrap() * 6u32, "n={n}");
    }
}

#[test]
fn gamma_values_and_telescoping() {
    assert_eq!(gamma(1).unwrap(), b(2));
    assert_eq!(gamma_quoted(1), Some(b(3)));
    assert_eq!(gamma_quoted(2), None);
    assert_eq!(gamma(2).unwrap(), b(6));
    assert_eq!(gamma(3).unwrap(), b(30));
    assert_eq!(gamma(4).unwrap(), b(270));
    for r in 2..=12u64 {
        assert_eq!(gamma(r).unwrap(), gamma(r - 1).unwrap() * ((1u128 << (r - 1)) + 1));
    }
    assert!(gamma(0).is_err());
}

#[test]
fn gamma_prime_matches_power_form() {
    assert_eq!(gamma_prime(2).unwrap(), b(18));
    for n in 1..=10u32 {
        let power = BigUint::from(3u32).pow(n) * (BigUint::from(1u32) << (n * (n - 1) / 2));
        assert_eq!(gamma_prime(n as u64).unwrap(), power);
    }
}

#[test]
fn beta_delta_epsilon_values() {
    assert_eq!(beta(0).unwrap(), b(6));
    assert_eq!(beta(1).unwrap(), b(10));
    assert_eq!(beta(2).unwrap(), b(90));
    // alpha'_4 (gamma_2 + 3) and alpha'_8 (gamma_3 + 3)
    assert_eq!(beta(3).unwrap(), b(170 * 33));
    assert_eq!(beta_prime(1, 2).unwrap(), beta(2).unwrap());
    assert_eq!(beta_prime(3, 1).unwrap(), b(42 * 5));
    // alpha'_6 ((2 + 2) * 2 + 3)
    assert_eq!(delta(1).unwrap(), b(42 * 11));
    assert_eq!(delta(2).unwrap(), b(2730 * ((8 + 4) * 6 + 3)));
    assert_eq!(epsilon(1).unwrap(), b(10));
    // alpha'_6 (gamma'_2 + 3)
    assert_eq!(epsilon(2).unwrap(), b(42 * 21));
    assert!(delta(0).is_err());
    assert!(epsilon(0).is_err());
}

#[test]
fn vertex_budget_examples() {
    let first = |r| vertex_budget(r, 4).unwrap()[0].clone();
    assert_eq!(first(1), b(3));
    assert_eq!(first(2), b(6));
    assert_eq!(first(3), b(27));
    assert_eq!(first(4), b(261));
    assert_eq!(vertex_budget(4, 4).unwrap(), vec![b(261), b(176), b(72), b(18), b(4)]);
    assert!(vertex_budget(2, 3).is_err());
    assert!(vertex_budget(0, 4).is_err());
}

#[test]
fn vertex_budget_forward_consistency() {
    for r in 1..=8u64 {
        for target in 4..=40u64 {
            let c = vertex_budget(r, target).unwrap();
            assert_eq!(c.len() as u64, r + 1);
            assert!(c[r as usize] >= b(target as u128), "r={r} target={target}");
            for s in 1..=r {
                let stage = &c[s as usize - 1];
                assert!(*stage >= b((1u128 << s) + 1), "r={r} target={target} s={s}");
                let next = (stage / ((1u32 << s) + 1) + 1u32) * 2u32;
                assert_eq!(next, c[s as usize]);
            }
            // c_1 is the smallest budget that still reaches the target
            let smaller = &c[0] - 1u32;
            let mut x = smaller;
            for s in 1..=r {
                x = (&x / ((1u32 << s) + 1) + 1u32) * 2u32;
            }
            assert!(x < b(target as u128) || target % 2 == 1, "r={r} target={target}");
        }
    }
}

#[test]
fn concurrent_lookups_agree() {
    let values: Vec<BigUint> = (1..=200u64).into_par_iter().map(|n| alpha_prime(n).unwrap()).collect();
    for (i, v) in values.iter().enumerate() {
        assert_eq!(*v, alpha_prime(i as u64 + 1).unwrap());
    }
}

#[test]
fn lookup_by_name() {
    assert_eq!(lookup("beta", 1, None).unwrap().value, b(10));
    assert_eq!(lookup("gamma", 1, None).unwrap().quoted, Some(b(3)));
    assert_eq!(lookup("beta-prime", 2, Some(1)).unwrap().value, beta_prime(2, 1).unwrap());
    assert!(matches!(lookup("beta_prime", 2, None), Err(SeqError::MissingSecondIndex(_))));
    assert_eq!(lookup("vertex_budget", 3, None).unwrap().value, b(27));
}
