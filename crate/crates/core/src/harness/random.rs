use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::spatial::{validate_embedding, Embedding, Point3, Violation};

/// Default side length of the coordinate cube.
pub const DEFAULT_RANGE: u64 = 1_000_000;
/// Resampling rounds before `random_embedding` gives up.
pub const RESAMPLE_CAP: usize = 1_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RandomEmbeddingError {
    #[error("n must be at least 1")]
    NoVertices,
    #[error("coordinate range must be positive")]
    EmptyRange,
    #[error("retry cap exceeded after {rounds} resampling rounds (last violation: {last})")]
    RetryCap { rounds: usize, last: Violation },
}

/// Smallest range the generator is meant for: max(10^6, n^3).
pub fn default_range(n: usize) -> u64 {
    DEFAULT_RANGE.max((n as u64).saturating_pow(3))
}

/// Seeded random general-position embedding with coordinates in [0, range)^3.
///
/// All n points are drawn up front; while validation names a violating tuple, the
/// highest-indexed vertex of that tuple is redrawn from the same stream. Identical
/// (n, seed, range) therefore give identical coordinates.
pub fn random_embedding(n: usize, seed: u64, range: u64) -> Result<Embedding, RandomEmbeddingError> {
    if n == 0 {
        return Err(RandomEmbeddingError::NoVertices);
    }
    if range == 0 {
        return Err(RandomEmbeddingError::EmptyRange);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        Point3::new(
            BigInt::from(rng.gen_range(0..range)),
            BigInt::from(rng.gen_range(0..range)),
            BigInt::from(rng.gen_range(0..range)),
        )
    };
    let mut points: Vec<Point3> = (0..n).map(|_| draw(&mut rng)).collect();
    for _ in 0..RESAMPLE_CAP {
        match Embedding::new(points.clone()) {
            Ok(emb) => return Ok(emb),
            Err(v) => {
                let worst = *v.vertices().iter().max().expect("non-empty violation");
                points[worst] = draw(&mut rng);
            }
        }
    }
    let last = validate_embedding(&points).err().unwrap_or(Violation::Empty);
    Err(RandomEmbeddingError::RetryCap { rounds: RESAMPLE_CAP, last })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_embedding(6, 1, DEFAULT_RANGE).unwrap();
        let b = random_embedding(6, 1, DEFAULT_RANGE).unwrap();
        assert_eq!(a.points(), b.points());
        let c = random_embedding(6, 2, DEFAULT_RANGE).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn single_lattice_point_hits_the_cap() {
        let err = random_embedding(2, 0, 1).unwrap_err();
        assert!(matches!(err, RandomEmbeddingError::RetryCap { .. }));
    }

    #[test]
    fn tiny_range_still_resolves_by_resampling() {
        let e = random_embedding(7, 3, 20).unwrap();
        assert!(validate_embedding(e.points()).is_ok());
    }
}
