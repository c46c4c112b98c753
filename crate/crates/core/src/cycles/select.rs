use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SelectError {
    #[error("precondition violated: modulus {0} must be positive")]
    BadModulus(i64),
    #[error("precondition violated: length {len} is less than {min}")]
    TooShort { len: usize, min: usize },
    #[error("precondition violated: sum {sum} is not divisible by {modulus}")]
    NotDivisible { sum: i64, modulus: i64 },
    #[error("precondition violated: sum is zero")]
    ZeroSum,
}

/// A block picked out of a cyclic integer sequence.
///
/// The run covers indices `start, start+1, ..., start+len-1` (mod the sequence
/// length). When `complement` is set, the selected block is everything outside
/// that run, which is again a consecutive run of the cyclic sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSelection {
    pub values: Vec<i64>,
    pub modulus: i64,
    pub start: usize,
    pub len: usize,
    pub complement: bool,
    /// Partial sums S_1..S_k inspected while searching, S_i = values[0] + ... + values[i-1].
    pub partial_sums: Vec<i64>,
}

impl BlockSelection {
    /// The selected block as a run `(start, len)` of the cyclic sequence.
    pub fn run(&self) -> (usize, usize) {
        let t = self.values.len();
        if self.complement {
            ((self.start + self.len) % t, t - self.len)
        } else {
            (self.start, self.len)
        }
    }

    /// Selected indices in cyclic order.
    pub fn indices(&self) -> Vec<usize> {
        let t = self.values.len();
        let (s, l) = self.run();
        (0..l).map(|k| (s + k) % t).collect()
    }

    pub fn sum(&self) -> i64 {
        self.indices().iter().map(|&i| self.values[i]).sum()
    }
}

fn prefix(values: &[i64], upto: usize) -> Vec<i64> {
    values[..upto]
        .iter()
        .scan(0i64, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// Picks a proper consecutive block whose sum is divisible by `m` but not zero.
///
/// Among S_0 = 0, S_1, ..., S_m two agree mod m (pigeonhole); the first such pair
/// i < j in scan order (by j, then by i) gives the run i+1..j. If that run sums to
/// zero outright, its complement carries the whole nonzero total instead.
pub fn zero_block_select(values: &[i64], m: i64) -> Result<BlockSelection, SelectError> {
    let t = values.len();
    if m < 1 {
        return Err(SelectError::BadModulus(m));
    }
    if (t as i64) < m + 1 {
        return Err(SelectError::TooShort { len: t, min: m as usize + 1 });
    }
    let total: i64 = values.iter().sum();
    if total.rem_euclid(m) != 0 {
        return Err(SelectError::NotDivisible { sum: total, modulus: m });
    }
    if total == 0 {
        return Err(SelectError::ZeroSum);
    }
    let sums = prefix(values, m as usize);
    let mut seen: Vec<Option<usize>> = vec![None; m as usize];
    seen[0] = Some(0);
    for (j, &s) in sums.iter().enumerate() {
        let j = j + 1;
        let r = s.rem_euclid(m) as usize;
        if let Some(i) = seen[r] {
            let block = s - if i == 0 { 0 } else { sums[i - 1] };
            return Ok(BlockSelection {
                values: values.to_vec(),
                modulus: m,
                start: i,
                len: j - i,
                complement: block == 0,
                partial_sums: sums[..j].to_vec(),
            });
        }
        seen[r] = Some(j);
    }
    unreachable!("pigeonhole over {} partial sums", m + 1)
}

/// Returns the first proper consecutive run (by start, then by length, without
/// wrapping) whose sum is even. Its complement is then even as well.
pub fn select_zero_subsequence_mod2(values: &[i64]) -> Result<BlockSelection, SelectError> {
    let t = values.len();
    if t < 3 {
        return Err(SelectError::TooShort { len: t, min: 3 });
    }
    let total: i64 = values.iter().sum();
    if total.rem_euclid(2) != 0 {
        return Err(SelectError::NotDivisible { sum: total, modulus: 2 });
    }
    for start in 0..t {
        let mut acc = 0;
        for len in 1..(t - start + 1).min(t) {
            acc += values[start + len - 1];
            if acc.rem_euclid(2) == 0 {
                return Ok(BlockSelection {
                    values: values.to_vec(),
                    modulus: 2,
                    start,
                    len,
                    complement: false,
                    partial_sums: prefix(values, start + len),
                });
            }
        }
    }
    unreachable!("an even singleton or an odd pair always exists")
}

/// A partition of a cyclic sequence into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// Index at which the first block starts.
    pub rotation: usize,
    /// Blocks as `(start, len)` runs, in cyclic order from `rotation`.
    pub blocks: Vec<(usize, usize)>,
}

impl BlockDecomposition {
    pub fn block_indices(&self, t: usize) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&(s, l)| (0..l).map(|k| (s + k) % t).collect()).collect()
    }
}

/// Cuts the cyclic sequence into as many consecutive blocks as possible, each
/// summing to 0 mod `m`.
///
/// Cutting before index i and before index j leaves a zero block exactly when the
/// prefix sums agree mod m, so the best cut set is the largest class of prefix
/// residues; the rotation is the smallest index in such a class.
pub fn max_block_decompose(values: &[i64], m: i64) -> Result<BlockDecomposition, SelectError> {
    let t = values.len();
    if m < 1 {
        return Err(SelectError::BadModulus(m));
    }
    if t == 0 {
        return Err(SelectError::TooShort { len: 0, min: 1 });
    }
    let total: i64 = values.iter().sum();
    if total.rem_euclid(m) != 0 {
        return Err(SelectError::NotDivisible { sum: total, modulus: m });
    }
    let mut residues = vec![0i64];
    residues.extend(prefix(values, t - 1).into_iter().map(|s| s.rem_euclid(m)));
    let freq = |r: i64| residues.iter().filter(|&&x| x == r).count();
    let best = residues.iter().map(|&r| freq(r)).max().unwrap();
    let rotation = (0..t).find(|&i| freq(residues[i]) == best).unwrap();
    let cuts: Vec<usize> = (0..t).map(|k| (rotation + k) % t).filter(|&i| residues[i] == residues[rotation]).collect();
    let blocks = cuts
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let next = cuts[(k + 1) % cuts.len()];
            let len = if cuts.len() == 1 { t } else { (next + t - s) % t };
            (s, len)
        })
        .collect();
    Ok(BlockDecomposition { rotation, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_block_examples() {
        let s = zero_block_select(&[1, 1, 1, 1, 2], 2).unwrap();
        assert_eq!(s.indices(), vec![0, 1]);
        assert_eq!(s.sum(), 2);
        let s = zero_block_select(&[3, -3, 2, 2, 2], 2).unwrap();
        assert!(s.complement);
        assert_eq!(s.indices(), vec![2, 3, 4]);
        assert_eq!(s.sum(), 6);
        let e = zero_block_select(&[1, 1, 1, 1], 3).unwrap_err();
        assert!(e.to_string().starts_with("precondition violated"));
    }

    #[test]
    fn mod2_examples() {
        assert_eq!(select_zero_subsequence_mod2(&[1, 1, 0]).unwrap().indices(), vec![0, 1]);
        assert_eq!(select_zero_subsequence_mod2(&[0, 1, 1]).unwrap().indices(), vec![0]);
        assert!(select_zero_subsequence_mod2(&[1, 1]).is_err());
    }

    #[test]
    fn decompose_examples() {
        let d = max_block_decompose(&[1, 1, 1, 1, 1, 1], 2).unwrap();
        assert_eq!(d.blocks, vec![(0, 2), (2, 2), (4, 2)]);
        assert_eq!(max_block_decompose(&[0, 0, 0], 2).unwrap().blocks.len(), 3);
        let d = max_block_decompose(&[1, 3, 1, 1], 2).unwrap();
        assert_eq!(d.blocks, vec![(0, 2), (2, 2)]);
        assert_eq!(max_block_decompose(&[5], 5).unwrap().blocks, vec![(0, 1)]);
    }
}
