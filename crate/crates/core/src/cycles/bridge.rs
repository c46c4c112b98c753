use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spatial::{fuse, CycleError, LinkError, Linker, OrientedCycle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("too few vertices: cycle {which} has {len} vertices but {t} bridges were requested")]
    TooFewVertices { which: &'static str, len: usize, t: usize },
    #[error("need at least 2 bridges, got {0}")]
    TooFewBridges(usize),
    #[error("not disjoint: {0}")]
    NotDisjoint(String),
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("bridge family check failed: classes sum to {got}, expected {expected}")]
    SumMismatch { got: i64, expected: i64 },
}

/// Single-edge bridges from a source cycle `z` to a target cycle `w`.
///
/// `bridges[i] = (z_i, w_i)`: the w_i appear in ascending order along `w`, the
/// z_i in descending order along `z`, so consecutive bridges bound a disk-like
/// strip between the two cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub z: OrientedCycle,
    pub w: OrientedCycle,
    pub bridges: Vec<(usize, usize)>,
}

impl PathSystem {
    pub fn len(&self) -> usize {
        self.bridges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bridges.is_empty()
    }

    /// The cycle that goes out along bridge i, forward along `w` to bridge i+1,
    /// back along bridge i+1 and forward along `z` to the start.
    pub fn strip(&self, i: usize) -> OrientedCycle {
        self.run(i, 1)
    }

    /// The fusion of strips i, i+1, ..., i+len-1 (cyclically), for 1 <= len < t.
    pub fn run(&self, i: usize, len: usize) -> OrientedCycle {
        let t = self.len();
        assert!(len >= 1 && len < t, "run length {len} out of range for {t} bridges");
        let (z0, w0) = self.bridges[i % t];
        let (z1, w1) = self.bridges[(i + len) % t];
        let pw = |v| self.w.position(v).expect("bridge end on w");
        let pz = |v| self.z.position(v).expect("bridge end on z");
        let mut v = self.w.arc(pw(w0), pw(w1));
        let mut back = self.z.arc(pz(z1), pz(z0));
        v.append(&mut back);
        // rotate so the walk starts at z0 and ends just before it
        let last = v.pop().expect("nonempty");
        debug_assert_eq!(last, z0);
        v.insert(0, z0);
        OrientedCycle::new(v).expect("strips are simple")
    }
}

/// Picks `t` evenly spaced bridges between `z` and `w`.
pub fn choose_path_system(z: &OrientedCycle, w: &OrientedCycle, t: usize) -> Result<PathSystem, BridgeError> {
    if t < 2 {
        return Err(BridgeError::TooFewBridges(t));
    }
    if !z.is_disjoint(w) {
        return Err(BridgeError::NotDisjoint(format!("{z} and {w} share a vertex")));
    }
    for (which, c) in [("Z", z), ("W", w)] {
        if c.len() < t {
            return Err(BridgeError::TooFewVertices { which, len: c.len(), t });
        }
    }
    let (nz, nw) = (z.len(), w.len());
    let bridges = (0..t)
        .map(|i| {
            let wi = w.vertices()[i * nw / t];
            let zi = z.vertices()[(nz - i * nz / t) % nz];
            (zi, wi)
        })
        .collect();
    Ok(PathSystem { z: z.clone(), w: w.clone(), bridges })
}

/// The strips of a path system together with their linking numbers against `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeFamily {
    pub system: PathSystem,
    pub cycles: Vec<OrientedCycle>,
    pub classes: Vec<i64>,
}

impl BridgeFamily {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// The simple cycle obtained by fusing the cyclic run of strips `start..start+len`.
    pub fn fuse_run(&self, start: usize, len: usize) -> Result<OrientedCycle, BridgeError> {
        let t = self.len();
        let run: Vec<&OrientedCycle> = (0..len).map(|k| &self.cycles[(start + k) % t]).collect();
        let fused = fuse(run)?;
        debug_assert_eq!(fused.canonical(), self.system.run(start, len).canonical());
        Ok(fused)
    }

    pub fn run_class(&self, start: usize, len: usize) -> i64 {
        (0..len).map(|k| self.classes[(start + k) % self.len()]).sum()
    }
}

/// Builds the strips of `ps` and computes their linking numbers against `l`,
/// checking that they add up to lk(z, l) + lk(w, l).
pub fn build_bridge_family(
    linker: &Linker<'_>,
    l: &OrientedCycle,
    ps: &PathSystem,
) -> Result<BridgeFamily, BridgeError> {
    for (a, b) in &ps.bridges {
        for v in [a, b] {
            if l.contains(*v) {
                return Err(BridgeError::NotDisjoint(format!("{l} contains bridge end {v}")));
            }
        }
    }
    let cycles: Vec<OrientedCycle> = (0..ps.len()).map(|i| ps.strip(i)).collect();
    let classes = linker.lk_row(l, &cycles)?;
    let expected = linker.lk(&ps.z, l)? + linker.lk(&ps.w, l)?;
    let got: i64 = classes.iter().sum();
    if got != expected {
        return Err(BridgeError::SumMismatch { got, expected });
    }
    Ok(BridgeFamily { system: ps.clone(), cycles, classes })
}
