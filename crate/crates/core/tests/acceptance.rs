//! Acceptance checks. Runs as a plain binary (no libtest harness) so that the
//! one-line verdict per criterion is always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ilink_core::constructions::*;
use ilink_core::cycles::{select_zero_subsequence_mod2, zero_block_select};
use ilink_core::harness::{
    certificate_from_json, certificate_to_json, embedding_from_json, embedding_to_json, fixtures, random_embedding,
    run_engine, vertex_requirement, DEFAULT_RANGE,
};
use ilink_core::sequences::{alpha, alpha_prime, beta, gamma_quoted, gamma, vertex_budget};
use ilink_core::spatial::*;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest allowed gap between the exact linking number and the Gauss integral.
const GAUSS_TOL: f64 = 1e-6;
const CRIT1_LIMIT: Duration = Duration::from_secs(10);
const CRIT3_LIMIT: Duration = Duration::from_secs(60);
const CRIT7_LIMIT_EACH: Duration = Duration::from_secs(300);

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn emb(n: usize, seed: u64) -> Embedding {
    random_embedding(n, seed, DEFAULT_RANGE).expect("random embedding")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gauss_agrees(e: &Embedding, cert: &LinkCertificate) -> Result<(), String> {
    let c = &cert.components;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let g = gauss_estimate(e, &c[i], &c[j]);
            let exact = cert.linking_matrix[i][j];
            ensure((g - exact as f64).abs() < GAUSS_TOL, || format!("{}: gauss {g} vs exact {exact}", cert.theorem))?;
        }
    }
    Ok(())
}

/// Seeded K_6 embeddings each contain a pair of triangles with odd linking number.
fn c1_k6_pairs() -> Verdict {
    let start = Instant::now();
    let mut found = 0;
    for seed in 0..100 {
        let e = emb(6, seed);
        let linker = Linker::new(&e);
        let cert = find_nonsplit_pair(&linker, &all(6), Parity::Odd, SearchBudget::triangles_only())
            .map_err(|err| format!("seed {seed}: {err}"))?;
        verify_certificate(&e, &cert).map_err(|err| format!("seed {seed}: {err}"))?;
        gauss_agrees(&e, &cert)?;
        found += 1;
    }
    let took = start.elapsed();
    ensure(took < CRIT1_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("{found}/100 K_6 embeddings certified in {took:.2?}"))
}

fn random_disjoint_pair(n: usize, rng: &mut ChaCha8Rng) -> (OrientedCycle, OrientedCycle) {
    let mut v = all(n);
    v.shuffle(rng);
    let la = rng.gen_range(3..=n - 3);
    let lb = rng.gen_range(3..=n - la);
    (OrientedCycle::new(v[..la].to_vec()).unwrap(), OrientedCycle::new(v[la..la + lb].to_vec()).unwrap())
}

/// Exact linking numbers agree with the Gauss integral, do not depend on the
/// projection, and flip sign with orientation.
fn c2_linking_numbers() -> Verdict {
    let (hopf, a, b) = fixtures::hopf();
    let mut cases = vec![(hopf, a, b)];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let n = rng.gen_range(6..=10);
        let e = emb(n, 10_000 + k);
        let (a, b) = random_disjoint_pair(n, &mut rng);
        cases.push((e, a, b));
    }
    let mut nonzero = 0;
    for (idx, (e, a, b)) in cases.iter().enumerate() {
        let lk = linking_number(e, a, b).map_err(|err| format!("case {idx}: {err}"))?;
        let g = gauss_estimate(e, a, b);
        ensure((g - lk as f64).abs() < GAUSS_TOL, || format!("case {idx}: gauss {g} vs {lk}"))?;
        for seed in 0..5 {
            let dir = generic_direction(e, seed).map_err(|err| format!("case {idx}: {err}"))?;
            let other = linking_number_in(e, a, b, &dir).map_err(|err| format!("case {idx}: {err}"))?;
            ensure(other == lk, || format!("case {idx}: direction {seed} gives {other}, expected {lk}"))?;
        }
        ensure(linking_number(e, &a.reversed(), b).unwrap() == -lk, || format!("case {idx}: reversing A"))?;
        ensure(linking_number(e, a, &b.reversed()).unwrap() == -lk, || format!("case {idx}: reversing B"))?;
        ensure(linking_number(e, b, a).unwrap() == lk, || format!("case {idx}: swapping"))?;
        if lk != 0 {
            nonzero += 1;
        }
        if idx == 0 {
            ensure(lk.abs() == 1, || format!("Hopf fixture has lk {lk}"))?;
        }
    }
    Ok(format!("{} pairs ({nonzero} linked) agree with Gauss within {GAUSS_TOL:e} over 5 directions", cases.len()))
}

/// Expected zero-block selection, by direct summation: the first (j, then i)
/// pair with values[i..j] divisible by m; its complement if that sum is 0.
fn zero_block_oracle(v: &[i64], m: i64) -> Option<(usize, usize)> {
    let t = v.len();
    let total: i64 = v.iter().sum();
    if (t as i64) < m + 1 || total % m != 0 || total == 0 {
        return None;
    }
    for j in 1..=t {
        for i in 0..j {
            let s: i64 = v[i..j].iter().sum();
            if s % m == 0 {
                return Some(if s == 0 { (j % t, t - (j - i)) } else { (i, j - i) });
            }
        }
    }
    unreachable!()
}

/// Expected parity selection: first run by start, then length, with even sum.
fn mod2_oracle(v: &[i64]) -> Option<(usize, usize)> {
    let t = v.len();
    if t < 3 || v.iter().sum::<i64>() % 2 != 0 {
        return None;
    }
    (0..t).flat_map(|s| (1..=t - s).filter(move |&l| l < t).map(move |l| (s, l))).find(|&(s, l)| v[s..s + l].iter().sum::<i64>() % 2 == 0)
}

/// Both selectors match their oracles on every sequence of length <= 8 with
/// entries in [-5, 5], for m in {2, 3, 4}.
fn c3_selectors() -> Verdict {
    let start = Instant::now();
    let mut checked = 0u64;
    for len in 1..=8usize {
        let mut v = vec![-5i64; len];
        loop {
            for m in 2..=4 {
                let got = zero_block_select(&v, m).ok().map(|s| s.run());
                let want = zero_block_oracle(&v, m);
                ensure(got == want, || format!("zero_block_select({v:?}, {m}) = {got:?}, oracle {want:?}"))?;
            }
            let got = select_zero_subsequence_mod2(&v).ok().map(|s| s.run());
            let want = mod2_oracle(&v);
            ensure(got == want, || format!("select_zero_subsequence_mod2({v:?}) = {got:?}, oracle {want:?}"))?;
            checked += 1;
            let mut i = 0;
            while i < len && v[i] == 5 {
                v[i] = -5;
                i += 1;
            }
            if i == len {
                break;
            }
            v[i] += 1;
        }
    }
    let took = start.elapsed();
    ensure(took < CRIT3_LIMIT, || format!("{checked} sequences took {took:?}"))?;
    Ok(format!("{checked} sequences x 4 selector calls match in {took:.1?}"))
}

/// Three-component base plus one bridge step gives an even, nonzero linking number,
/// and the strip classes add up to q_1 + q_2.
fn c4_even_link() -> Verdict {
    for seed in 0..25 {
        let e = emb(10, 400 + seed);
        let linker = Linker::new(&e);
        let base = find_three_component_base(&linker, &all(10), SearchBudget::default()).map_err(|err| err.to_string())?;
        let [l, z, w] = <[OrientedCycle; 3]>::try_from(base.components).unwrap();
        let q1 = linking_number(&e, &l, &z).unwrap().abs();
        let q2 = linking_number(&e, &l, &w).unwrap().abs();
        let el = even_link_construct(&linker, &l, &z, &w, 0).map_err(|err| format!("seed {seed}: {err}"))?;
        let lk = linking_number(&e, &el.a, &l).unwrap();
        ensure(lk != 0 && lk % 2 == 0, || format!("seed {seed}: lk(A, L) = {lk}"))?;
        let fam = el
            .artifacts
            .iter()
            .find_map(|a| if let Artifact::Bridges(f) = a { Some(f) } else { None })
            .ok_or_else(|| format!("seed {seed}: no bridge family (odd inputs always need one)"))?;
        ensure(fam.len() == 3, || format!("seed {seed}: {} bridges", fam.len()))?;
        let sum: i64 = fam.cycles.iter().map(|c| linking_number(&e, c, &l).unwrap()).sum();
        ensure(sum == q1 + q2, || format!("seed {seed}: strip classes sum to {sum}, expected {}", q1 + q2))?;
    }
    Ok("25/25 K_10 embeddings: lk(A, L) even and nonzero; class sums exact".into())
}

fn campaign(what: &str, theorem: TheoremId, n: usize, seeds: std::ops::Range<u64>, pred: impl Fn(i64) -> bool) -> Verdict {
    let total = seeds.end - seeds.start;
    let start = Instant::now();
    let mut values = Vec::new();
    for seed in seeds {
        let e = emb(n, seed);
        let cert = run_engine(&Linker::new(&e), theorem, SearchBudget::default()).map_err(|err| format!("seed {seed}: {err}"))?;
        verify_certificate(&e, &cert).map_err(|err| format!("seed {seed}: {err}"))?;
        gauss_agrees(&e, &cert)?;
        let row = &cert.linking_matrix[0][1..];
        ensure(row.iter().all(|&v| pred(v)), || format!("seed {seed}: row {row:?}"))?;
        values.push(format!("{row:?}"));
    }
    Ok(format!("{total}/{total} {what} certified in {:.1?}: {}", start.elapsed(), values.join(" ")))
}

fn c5_mod4() -> Verdict {
    ensure(vertex_requirement(TheoremId::Mod2Whitehead { r: 2 }).unwrap() == 90, || "K_90 expected".into())?;
    campaign("K_90", TheoremId::Mod2Whitehead { r: 2 }, 90, 500..505, |v| v != 0 && v % 4 == 0)
}

fn c6_mod3() -> Verdict {
    campaign("K_35", TheoremId::Mod3, 35, 600..605, |v| v != 0 && v % 3 == 0)
}

fn c7_mod4_search() -> Verdict {
    let mut worst = Duration::ZERO;
    for seed in 700..710 {
        let e = emb(10, seed);
        let start = Instant::now();
        let cert = search_mod4(&Linker::new(&e), &all(10), SearchBudget::default()).map_err(|err| format!("seed {seed}: {err}"))?;
        worst = worst.max(start.elapsed());
        verify_certificate(&e, &cert).map_err(|err| format!("seed {seed}: {err}"))?;
        let lk = linking_number(&e, &cert.components[0], &cert.components[1]).unwrap();
        ensure(lk.rem_euclid(4) == 2, || format!("seed {seed}: lk {lk}"))?;
    }
    ensure(worst < CRIT7_LIMIT_EACH, || format!("slowest search took {worst:?}"))?;
    Ok(format!("10/10 K_10 embeddings have a pair with lk = 2 mod 4 (slowest {worst:.2?})"))
}

fn c8_sequences() -> Verdict {
    let b = |v: u64| BigUint::from(v);
    let mut checks: Vec<(String, BigUint, BigUint)> = Vec::new();
    for (i, v) in [(1, 6), (2, 10), (3, 26), (4, 52), (5, 110)] {
        checks.push((format!("alpha({i})"), alpha(i).unwrap(), b(v)));
    }
    for (i, v) in [(1, 1), (3, 5), (5, 21)] {
        checks.push((format!("alpha'({i})"), alpha_prime(i).unwrap(), b(v)));
    }
    for (i, v) in [(0, 6), (1, 10)] {
        checks.push((format!("beta({i})"), beta(i).unwrap(), b(v)));
    }
    for (i, v) in [(2, 6), (3, 30), (4, 270)] {
        checks.push((format!("gamma({i})"), gamma(i).unwrap(), b(v)));
    }
    checks.push(("gamma quoted(1)".into(), gamma_quoted(1).unwrap(), b(3)));
    checks.push(("c_1(r=3)".into(), vertex_budget(3, 4).unwrap()[0].clone(), b(27)));
    checks.push(("c_1(r=4)".into(), vertex_budget(4, 4).unwrap()[0].clone(), b(261)));
    for (name, got, want) in &checks {
        ensure(got == want, || format!("{name} = {got}, expected {want}"))?;
    }
    Ok(format!("{} table entries match", checks.len()))
}

/// Certificates from every engine survive serialization and are re-verified
/// from the coordinates alone.
fn c9_certificate_fuzz() -> Verdict {
    let ids = [
        "nonsplit-pair",
        "nonsplit-pair-odd",
        "triangle-mcycle",
        "three-component-odd",
        "even-link:r=0",
        "even-link:r=1",
        "ring-of-keys:n=2",
        "ring-of-keys:n=3",
        "ring-of-keys-odd:n=3",
        "star:n=3",
        "mod2-whitehead:r=1",
        "mod2-whitehead:r=2",
        "mod2-keys:n=2,r=1",
        "mod4",
        "all-even:n=1",
        "mod3",
        "mod3-keys:n=1",
    ];
    let start = Instant::now();
    let mut count = 0;
    let mut seed = 900u64;
    while count < 500 {
        let id: TheoremId = ids[count % ids.len()].parse().unwrap();
        let n = vertex_requirement(id).unwrap() as usize;
        let e = emb(n, seed);
        let mut cert = run_engine(&Linker::new(&e), id, SearchBudget::default()).map_err(|err| format!("{id} seed {seed}: {err}"))?;
        cert.seed = seed;
        // re-verify from the serialized form only
        let e2 = embedding_from_json(&embedding_to_json(&e)).map_err(|err| err.to_string())?;
        let c2 = certificate_from_json(&certificate_to_json(&cert)).map_err(|err| err.to_string())?;
        verify_certificate(&e2, &c2).map_err(|err| format!("{id} seed {seed}: {err}"))?;
        gauss_agrees(&e2, &c2)?;
        count += 1;
        seed += 1;
    }
    Ok(format!("{count} certificates from {} engines re-verified, 0 mismatches, in {:.1?}", ids.len(), start.elapsed()))
}

fn c10_ring_of_keys() -> Verdict {
    ensure(alpha(3).unwrap() == BigUint::from(26u32), || "alpha_3 != 26".into())?;
    campaign("K_26 ring-of-keys n=3", TheoremId::RingOfKeys { n: 3 }, 26, 1000..1003, |v| v != 0)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("K_6 odd triangle pairs", c1_k6_pairs),
        ("linking-number correctness", c2_linking_numbers),
        ("selector oracle equivalence", c3_selectors),
        ("even link from three components", c4_even_link),
        ("mod-4 two-component construction", c5_mod4),
        ("mod-3 two-component construction", c6_mod3),
        ("exhaustive 2 mod 4 search", c7_mod4_search),
        ("sequence table", c8_sequences),
        ("certificate soundness fuzz", c9_certificate_fuzz),
        ("ring of keys n=3", c10_ring_of_keys),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
