//! Exact integer tables for the size bounds used by the constructions.
//!
//! The recursive sequences are memoized behind a read-mostly lock; every value
//! is an exact [`BigUint`].

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("index out of range: {name}({index}) is defined for index >= {first}")]
    OutOfRange { name: &'static str, index: u64, first: u64 },
    #[error("invalid target: final budget {0} must be at least 4")]
    InvalidTarget(u64),
    #[error("unknown sequence `{0}`")]
    UnknownName(String),
    #[error("sequence `{0}` needs a second index")]
    MissingSecondIndex(&'static str),
}

fn check(name: &'static str, index: u64, first: u64) -> Result<(), SeqError> {
    if index < first {
        Err(SeqError::OutOfRange { name, index, first })
    } else {
        Ok(())
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow2(k: u64) -> BigUint {
    BigUint::one() << k
}

struct Memo {
    alpha: RwLock<Vec<BigUint>>,
    alpha_prime: RwLock<Vec<BigUint>>,
}

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Memo {
        alpha: RwLock::new(vec![big(0), big(6), big(10)]),
        alpha_prime: RwLock::new(vec![big(0), big(1)]),
    })
}

fn memoized(cache: &RwLock<Vec<BigUint>>, n: usize, step: impl Fn(usize, &[BigUint]) -> BigUint) -> BigUint {
    if let Some(v) = cache.read().unwrap().get(n) {
        return v.clone();
    }
    let mut table = cache.write().unwrap();
    while table.len() <= n {
        let next = step(table.len(), &table);
        table.push(next);
    }
    table[n].clone()
}

/// alpha_1 = 6, alpha_2 = 10, alpha_{2m+1} = 2 alpha_{2m} + 6, alpha_{2m+2} = 2 alpha_{2m+1}.
pub fn alpha(n: u64) -> Result<BigUint, SeqError> {
    check("alpha", n, 1)?;
    Ok(memoized(&memo().alpha, n as usize, |k, t| if k % 2 == 1 { &t[k - 1] * 2u32 + 6u32 } else { &t[k - 1] * 2u32 }))
}

/// Closed form of alpha at odd index 2m+1 (m >= 1): 6 (1 + 4 + ... + 4^m) - 4^m.
pub fn alpha_odd_closed_form(m: u64) -> BigUint {
    let geometric: BigUint = (0..=m).map(|j| pow2(2 * j)).sum();
    geometric * 6u32 - pow2(2 * m)
}

/// alpha'_1 = 1, alpha'_{2m} = 2 alpha'_{2m-1}, alpha'_{2m+1} = 2 alpha'_{2m} + 1.
pub fn alpha_prime(n: u64) -> Result<BigUint, SeqError> {
    check("alpha_prime", n, 1)?;
    Ok(memoized(&memo().alpha_prime, n as usize, |k, t| if k % 2 == 0 { &t[k - 1] * 2u32 } else { &t[k - 1] * 2u32 + 1u32 }))
}

/// Closed form of alpha' at odd index 2m-1: (4^m - 1)/3.
pub fn alpha_prime_odd_closed_form(m: u64) -> BigUint {
    (pow2(2 * m) - 1u32) / 3u32
}

/// gamma_r = (2^0+1)(2^1+1)...(2^{r-1}+1). gamma_1 evaluates to 2; see [`gamma_quoted`].
pub fn gamma(r: u64) -> Result<BigUint, SeqError> {
    check("gamma", r, 1)?;
    Ok((0..r).map(|i| pow2(i) + 1u32).product())
}

/// The value commonly quoted for gamma_1 (the smallest vertex count that
/// actually supports the r = 1 construction), where it differs from the product.
pub fn gamma_quoted(r: u64) -> Option<BigUint> {
    (r == 1).then(|| big(3))
}

/// gamma'_n = prod_{i=1}^{n} 3 * 2^{i-1}.
pub fn gamma_prime(n: u64) -> Result<BigUint, SeqError> {
    check("gamma_prime", n, 1)?;
    Ok((1..=n).map(|i| pow2(i - 1) * 3u32).product())
}

/// beta_0 = 6, beta_1 = 10, beta_r = alpha'_{2^r} (gamma_r + 3).
pub fn beta(r: u64) -> Result<BigUint, SeqError> {
    match r {
        0 => Ok(big(6)),
        1 => Ok(big(10)),
        _ => Ok(alpha_prime(1 << r)? * (gamma(r)? + 3u32)),
    }
}

/// beta'_{n,r} = alpha'_{n 2^r} (gamma_r + 3).
pub fn beta_prime(n: u64, r: u64) -> Result<BigUint, SeqError> {
    check("beta_prime", n, 1)?;
    check("beta_prime (second index)", r, 1)?;
    Ok(alpha_prime(n << r)? * (gamma(r)? + 3u32))
}

/// delta_r = alpha'_{3 * 2^r} ((2^{2r-1} + 2^r) gamma_r + 3).
pub fn delta(r: u64) -> Result<BigUint, SeqError> {
    check("delta", r, 1)?;
    Ok(alpha_prime(3 << r)? * ((pow2(2 * r - 1) + pow2(r)) * gamma(r)? + 3u32))
}

/// epsilon_1 = 10, epsilon_n = alpha'_{2^{n+1} - 2} (gamma'_n + 3).
pub fn epsilon(n: u64) -> Result<BigUint, SeqError> {
    check("epsilon", n, 1)?;
    if n == 1 {
        return Ok(big(10));
    }
    Ok(alpha_prime((1 << (n + 1)) - 2)? * (gamma_prime(n)? + 3u32))
}

fn even_up(v: &BigUint) -> BigUint {
    if v.bit(0) {
        v + 1u32
    } else {
        v.clone()
    }
}

/// Vertex budgets c_1, ..., c_{r+1} for r rounds of halving-and-bridging.
///
/// Round s pairs cycles of at least c_s vertices, joins each pair with 2^s + 1
/// bridges, and keeps a strip of at least c_{s+1} = 2(floor(c_s / (2^s + 1)) + 1)
/// vertices. Working backwards from `target` = c_{r+1} with
/// c_s = (2^s + 1)(c_{s+1}/2 - 1), where odd c_{s+1} are first rounded up to even,
/// gives the smallest starting budget c_1. The returned list is the forward
/// recursion from that c_1.
pub fn vertex_budget(r: u64, target: u64) -> Result<Vec<BigUint>, SeqError> {
    check("vertex_budget", r, 1)?;
    if target < 4 {
        return Err(SeqError::InvalidTarget(target));
    }
    let mut c = big(target);
    for s in (1..=r).rev() {
        c = (pow2(s) + 1u32) * (even_up(&c) / 2u32 - 1u32);
    }
    let mut out = vec![c.clone()];
    for s in 1..=r {
        c = ((&c / (pow2(s) + 1u32)) + 1u32) * 2u32;
        out.push(c.clone());
    }
    Ok(out)
}

/// One row of a table, as printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceValue {
    pub name: String,
    pub index: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_index: Option<u64>,
    #[serde(serialize_with = "as_string")]
    pub value: BigUint,
    /// A differing value that is commonly quoted for this entry, if any.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_as_string")]
    pub quoted: Option<BigUint>,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

fn opt_as_string<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    as_string(v.as_ref().expect("skipped when none"), s)
}

pub const SEQUENCE_NAMES: &[&str] =
    &["alpha", "alpha_prime", "beta", "beta_prime", "gamma", "gamma_prime", "delta", "epsilon", "vertex_budget"];

/// Looks up a table entry by name. `beta_prime` takes `second` as r; `vertex_budget`
/// takes `second` as the final target (default 4) and reports c_1.
pub fn lookup(name: &str, index: u64, second: Option<u64>) -> Result<SequenceValue, SeqError> {
    let name_norm = name.replace('-', "_");
    let (value, quoted) = match name_norm.as_str() {
        "alpha" => (alpha(index)?, None),
        "alpha_prime" => (alpha_prime(index)?, None),
        "beta" => (beta(index)?, None),
        "beta_prime" => (beta_prime(index, second.ok_or(SeqError::MissingSecondIndex("beta_prime"))?)?, None),
        "gamma" => (gamma(index)?, gamma_quoted(index)),
        "gamma_prime" => (gamma_prime(index)?, None),
        "delta" => (delta(index)?, None),
        "epsilon" => (epsilon(index)?, None),
        "vertex_budget" => (vertex_budget(index, second.unwrap_or(4))?.swap_remove(0), None),
        _ => return Err(SeqError::UnknownName(name.to_string())),
    };
    Ok(SequenceValue { name: name_norm, index, second_index: second, value, quoted })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(alpha(1).unwrap(), big(6));
        assert_eq!(alpha_prime(1).unwrap(), big(1));
        assert_eq!(beta(1).unwrap(), big(10));
        assert!(alpha(0).is_err());
        assert_eq!(gamma_quoted(1), Some(big(3)));
    }

    #[test]
    fn lookup_serializes_small_values_as_numbers() {
        let v = lookup("beta", 1, None).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"name":"beta","index":1,"value":10}"#);
        assert!(lookup("zeta", 1, None).is_err());
    }
}
