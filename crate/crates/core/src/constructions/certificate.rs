use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ConstructError;
use crate::cycles::{BlockDecomposition, BlockSelection, BridgeFamily};
use crate::spatial::{Embedding, LinkError, Linker, OrientedCycle};

/// The statement a certificate claims, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Two disjoint cycles with nonzero linking number.
    NonsplitPair,
    /// Two disjoint cycles with odd linking number.
    NonsplitPairOdd,
    /// A triangle and a disjoint cycle with nonzero linking number.
    TriangleMcycle,
    /// L, Z, W with lk(L, Z) and lk(L, W) odd.
    ThreeComponentOdd,
    /// Two components with lk divisible by 2^{r+1}, nonzero.
    EvenLink { r: u32 },
    /// L and n keys with every lk(L, Z_i) nonzero.
    RingOfKeys { n: u32 },
    /// L and n keys with every lk(L, Z_i) odd.
    RingOfKeysOdd { n: u32 },
    /// L and n keys with every lk(L, Z_i) nonzero, built over vertex blocks.
    Star { n: u32 },
    /// Two components with lk divisible by 2^r, nonzero.
    Mod2Whitehead { r: u32 },
    /// L and n keys with every lk(L, Z_i) divisible by 2^r, nonzero.
    Mod2Keys { n: u32, r: u32 },
    /// Two components with lk = 2 mod 4.
    Mod4,
    /// L, W, A with lk(L, W), lk(L, A) divisible by 2^r and nonzero, lk(W, A) even.
    Mod2Rings { r: u32 },
    /// L and n components, all pairwise linking numbers even, lk(L, V_i) nonzero.
    AllEven { n: u32 },
    /// Two components with lk divisible by 3, nonzero.
    Mod3,
    /// L and n keys with every lk(L, Z_i) divisible by 3, nonzero.
    Mod3Keys { n: u32 },
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremId::NonsplitPair => write!(f, "nonsplit-pair"),
            TheoremId::NonsplitPairOdd => write!(f, "nonsplit-pair-odd"),
            TheoremId::TriangleMcycle => write!(f, "triangle-mcycle"),
            TheoremId::ThreeComponentOdd => write!(f, "three-component-odd"),
            TheoremId::EvenLink { r } => write!(f, "even-link:r={r}"),
            TheoremId::RingOfKeys { n } => write!(f, "ring-of-keys:n={n}"),
            TheoremId::RingOfKeysOdd { n } => write!(f, "ring-of-keys-odd:n={n}"),
            TheoremId::Star { n } => write!(f, "star:n={n}"),
            TheoremId::Mod2Whitehead { r } => write!(f, "mod2-whitehead:r={r}"),
            TheoremId::Mod2Keys { n, r } => write!(f, "mod2-keys:n={n},r={r}"),
            TheoremId::Mod4 => write!(f, "mod4"),
            TheoremId::Mod2Rings { r } => write!(f, "mod2-rings:r={r}"),
            TheoremId::AllEven { n } => write!(f, "all-even:n={n}"),
            TheoremId::Mod3 => write!(f, "mod3"),
            TheoremId::Mod3Keys { n } => write!(f, "mod3-keys:n={n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown theorem id `{0}`")]
pub struct UnknownTheorem(pub String);

impl FromStr for TheoremId {
    type Err = UnknownTheorem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UnknownTheorem(s.to_string());
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let mut n = None;
        let mut r = None;
        for kv in params.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            let v: u32 = v.parse().map_err(|_| bad())?;
            match k {
                "n" => n = Some(v),
                "r" => r = Some(v),
                _ => return Err(bad()),
            }
        }
        let id = match (name, n, r) {
            ("nonsplit-pair", None, None) => TheoremId::NonsplitPair,
            ("nonsplit-pair-odd", None, None) => TheoremId::NonsplitPairOdd,
            ("triangle-mcycle", None, None) => TheoremId::TriangleMcycle,
            ("three-component-odd", None, None) => TheoremId::ThreeComponentOdd,
            ("even-link", None, Some(r)) => TheoremId::EvenLink { r },
            ("ring-of-keys", Some(n), None) => TheoremId::RingOfKeys { n },
            ("ring-of-keys-odd", Some(n), None) => TheoremId::RingOfKeysOdd { n },
            ("star", Some(n), None) => TheoremId::Star { n },
            ("mod2-whitehead", None, Some(r)) => TheoremId::Mod2Whitehead { r },
            ("mod2-keys", Some(n), Some(r)) => TheoremId::Mod2Keys { n, r },
            ("mod4", None, None) => TheoremId::Mod4,
            ("mod2-rings", None, Some(r)) => TheoremId::Mod2Rings { r },
            ("all-even", Some(n), None) => TheoremId::AllEven { n },
            ("mod3", None, None) => TheoremId::Mod3,
            ("mod3-keys", Some(n), None) => TheoremId::Mod3Keys { n },
            _ => return Err(bad()),
        };
        Ok(id)
    }
}

fn divisible(lk: i64, m: i64) -> bool {
    lk.rem_euclid(m) == 0
}

fn pow2(r: u32) -> i64 {
    1i64.checked_shl(r).filter(|&v| v > 0).unwrap_or(i64::MAX)
}

impl TheoremId {
    /// Number of components the statement is about.
    pub fn arity(&self) -> usize {
        match *self {
            TheoremId::ThreeComponentOdd | TheoremId::Mod2Rings { .. } => 3,
            TheoremId::RingOfKeys { n }
            | TheoremId::RingOfKeysOdd { n }
            | TheoremId::Star { n }
            | TheoremId::Mod2Keys { n, .. }
            | TheoremId::AllEven { n }
            | TheoremId::Mod3Keys { n } => n as usize + 1,
            _ => 2,
        }
    }

    /// Whether a linking matrix (component 0 first) satisfies the statement.
    pub fn check(&self, m: &[Vec<i64>], components: &[OrientedCycle]) -> Result<(), String> {
        let k = self.arity();
        if m.len() != k {
            return Err(format!("expected {k} components, found {}", m.len()));
        }
        let row0 = |pred: &dyn Fn(i64) -> bool, what: &str| -> Result<(), String> {
            for (i, &v) in m[0].iter().enumerate().skip(1) {
                if !pred(v) {
                    return Err(format!("lk(component 0, component {i}) = {v} is not {what}"));
                }
            }
            Ok(())
        };
        match *self {
            TheoremId::NonsplitPair | TheoremId::RingOfKeys { .. } | TheoremId::Star { .. } => {
                row0(&|v| v != 0, "nonzero")
            }
            TheoremId::TriangleMcycle => {
                if components[0].len() != 3 {
                    return Err("first component is not a triangle".into());
                }
                row0(&|v| v != 0, "nonzero")
            }
            TheoremId::NonsplitPairOdd | TheoremId::ThreeComponentOdd | TheoremId::RingOfKeysOdd { .. } => {
                row0(&|v| v.rem_euclid(2) == 1, "odd")
            }
            TheoremId::EvenLink { r } => row0(&|v| v != 0 && divisible(v, pow2(r + 1)), "a nonzero multiple of 2^(r+1)"),
            TheoremId::Mod2Whitehead { r } | TheoremId::Mod2Keys { r, .. } => {
                row0(&|v| v != 0 && divisible(v, pow2(r)), "a nonzero multiple of 2^r")
            }
            TheoremId::Mod4 => row0(&|v| v.rem_euclid(4) == 2, "2 mod 4"),
            TheoremId::Mod2Rings { r } => {
                row0(&|v| v != 0 && divisible(v, pow2(r)), "a nonzero multiple of 2^r")?;
                if m[1][2].rem_euclid(2) != 0 {
                    return Err(format!("lk(component 1, component 2) = {} is odd", m[1][2]));
                }
                Ok(())
            }
            TheoremId::AllEven { .. } => {
                row0(&|v| v != 0, "nonzero")?;
                for (i, row) in m.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        if i != j && v.rem_euclid(2) != 0 {
                            return Err(format!("lk(component {i}, component {j}) = {v} is odd"));
                        }
                    }
                }
                Ok(())
            }
            TheoremId::Mod3 | TheoremId::Mod3Keys { .. } => {
                row0(&|v| v != 0 && divisible(v, 3), "a nonzero multiple of 3")
            }
        }
    }
}

/// Intermediate objects kept in memory for inspection; never serialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Bridges(BridgeFamily),
    Selection(BlockSelection),
    Decomposition(BlockDecomposition),
}

/// A constructed link together with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LinkCertificate {
    pub theorem: String,
    pub components: Vec<OrientedCycle>,
    pub linking_matrix: Vec<Vec<i64>>,
    pub case_trace: Vec<String>,
    pub orientation_flips: Vec<bool>,
    pub seed: u64,
    #[serde(skip)]
    pub artifacts: Vec<Artifact>,
}

/// Computes the linking matrix of `components` and checks the theorem's predicate.
pub fn certify(
    linker: &Linker<'_>,
    theorem: TheoremId,
    components: Vec<OrientedCycle>,
    case_trace: Vec<String>,
    artifacts: Vec<Artifact>,
) -> Result<LinkCertificate, ConstructError> {
    let linking_matrix = linker.matrix(&components)?;
    theorem
        .check(&linking_matrix, &components)
        .map_err(|e| ConstructError::StepFailed(format!("{theorem}: {e}")))?;
    let orientation_flips = components.iter().map(|c| c.is_flipped()).collect();
    Ok(LinkCertificate {
        theorem: theorem.to_string(),
        components,
        linking_matrix,
        case_trace,
        orientation_flips,
        seed: 0,
        artifacts,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    UnknownTheorem(#[from] UnknownTheorem),
    #[error("component {index} is invalid: {reason}")]
    BadComponent { index: usize, reason: String },
    #[error("components {0} and {1} share a vertex")]
    NotDisjoint(usize, usize),
    #[error("stored linking matrix differs from recomputed entry ({i},{j}): stored {stored}, actual {actual}")]
    MatrixMismatch { i: usize, j: usize, stored: i64, actual: i64 },
    #[error("stored linking matrix has the wrong shape")]
    MatrixShape,
    #[error("orientation flags do not match the stored components")]
    FlipMismatch,
    #[error("predicate fails: {0}")]
    Predicate(String),
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// Re-checks a certificate from the coordinates alone.
pub fn verify_certificate(emb: &Embedding, cert: &LinkCertificate) -> Result<(), VerifyError> {
    let theorem: TheoremId = cert.theorem.parse()?;
    let comps = &cert.components;
    for (index, c) in comps.iter().enumerate() {
        c.check_range(emb.n()).map_err(|e| VerifyError::BadComponent { index, reason: e.to_string() })?;
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if !comps[i].is_disjoint(&comps[j]) {
                return Err(VerifyError::NotDisjoint(i, j));
            }
        }
    }
    let m = &cert.linking_matrix;
    if m.len() != comps.len() || m.iter().any(|row| row.len() != comps.len()) {
        return Err(VerifyError::MatrixShape);
    }
    let linker = Linker::direct(emb);
    for i in 0..comps.len() {
        if m[i][i] != 0 {
            return Err(VerifyError::MatrixMismatch { i, j: i, stored: m[i][i], actual: 0 });
        }
        for j in i + 1..comps.len() {
            let actual = linker.lk(&comps[i], &comps[j])?;
            for (a, b) in [(i, j), (j, i)] {
                if m[a][b] != actual {
                    return Err(VerifyError::MatrixMismatch { i: a, j: b, stored: m[a][b], actual });
                }
            }
        }
    }
    if cert.orientation_flips.len() != comps.len()
        || comps.iter().zip(&cert.orientation_flips).any(|(c, &f)| c.is_flipped() != f)
    {
        return Err(VerifyError::FlipMismatch);
    }
    theorem.check(m, comps).map_err(VerifyError::Predicate)
}
