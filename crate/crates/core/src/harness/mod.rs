//! Random embeddings, verification campaigns and serialization.

pub mod campaign;
pub mod engines;
pub mod fixtures;
pub mod io;
pub mod random;

pub use campaign::{run_campaign, CampaignError, CampaignReport, CampaignSpec, TrialOutcome, TrialRecord, WORKERS_ENV};
pub use engines::{run_engine, vertex_requirement};
pub use io::{
    certificate_from_json, certificate_to_json, embedding_from_json, embedding_to_json, read_certificate,
    read_embedding, write_file, EmbeddingJson, IoError,
};
pub use random::{default_range, random_embedding, RandomEmbeddingError, DEFAULT_RANGE};
