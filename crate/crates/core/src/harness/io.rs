use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::LinkCertificate;
use crate::spatial::{Embedding, Point3, Violation};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o error on {path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex count {declared} does not match {actual} coordinate rows")]
    CountMismatch { declared: usize, actual: usize },
    #[error("coordinate `{0}` is not a decimal integer")]
    BadCoordinate(String),
    #[error("invalid embedding: {0}")]
    Invalid(#[from] Violation),
}

/// On-disk form of an embedding; coordinates are decimal strings so that any
/// precision survives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub n: usize,
    pub coords: Vec<[String; 3]>,
}

impl From<&Embedding> for EmbeddingJson {
    fn from(e: &Embedding) -> Self {
        EmbeddingJson {
            n: e.n(),
            coords: e.points().iter().map(|p| [p.x.to_string(), p.y.to_string(), p.z.to_string()]).collect(),
        }
    }
}

impl TryFrom<EmbeddingJson> for Embedding {
    type Error = IoError;

    fn try_from(j: EmbeddingJson) -> Result<Self, IoError> {
        if j.n != j.coords.len() {
            return Err(IoError::CountMismatch { declared: j.n, actual: j.coords.len() });
        }
        let parse = |s: &String| s.parse::<BigInt>().map_err(|_| IoError::BadCoordinate(s.clone()));
        let points = j
            .coords
            .iter()
            .map(|[x, y, z]| Ok(Point3::new(parse(x)?, parse(y)?, parse(z)?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Embedding::new(points)?)
    }
}

pub fn embedding_to_json(e: &Embedding) -> String {
    serde_json::to_string(&EmbeddingJson::from(e)).expect("embedding serializes")
}

pub fn embedding_from_json(s: &str) -> Result<Embedding, IoError> {
    serde_json::from_str::<EmbeddingJson>(s)?.try_into()
}

pub fn certificate_to_json(c: &LinkCertificate) -> String {
    serde_json::to_string_pretty(c).expect("certificate serializes")
}

pub fn certificate_from_json(s: &str) -> Result<LinkCertificate, IoError> {
    Ok(serde_json::from_str(s)?)
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| IoError::File { path: dir.display().to_string(), source })?;
    }
    fs::write(path, contents).map_err(|source| IoError::File { path: path.display().to_string(), source })
}

pub fn read_embedding(path: &Path) -> Result<Embedding, IoError> {
    embedding_from_json(&read(path)?)
}

pub fn read_certificate(path: &Path) -> Result<LinkCertificate, IoError> {
    certificate_from_json(&read(path)?)
}
