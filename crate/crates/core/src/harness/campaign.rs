use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use super::engines::{run_engine, vertex_requirement};
use super::io::{certificate_to_json, embedding_to_json, write_file, IoError};
use super::random::random_embedding;
use crate::constructions::{verify_certificate, ConstructError, LinkCertificate, SearchBudget, TheoremId};
use crate::spatial::Linker;

/// Environment variable that sets the number of campaign worker threads.
pub const WORKERS_ENV: &str = "ILINK_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSpec {
    pub theorem: TheoremId,
    /// Size of the complete graph embedded in each trial.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Side of the coordinate cube.
    pub range: u64,
    pub budget: SearchBudget,
    /// Directory for embeddings, certificates and the CSV report; nothing is
    /// written when `None`.
    pub out_dir: Option<PathBuf>,
}

impl CampaignSpec {
    pub fn new(theorem: TheoremId, n: usize, trials: usize, seed: u64) -> Self {
        CampaignSpec { theorem, n, trials, seed, range: super::default_range(n), budget: SearchBudget::default(), out_dir: None }
    }

    /// Seed of the embedding used in trial `index`.
    pub fn trial_seed(&self, index: usize) -> u64 {
        self.seed.wrapping_add(index as u64)
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid campaign: {0}")]
    InvalidSpec(String),
    #[error("could not start workers: {0}")]
    Workers(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrialOutcome {
    /// A certificate that passed independent re-verification.
    Certified { certificate: LinkCertificate, path: Option<PathBuf> },
    /// The engine gave up or a construction step failed: a falsification candidate.
    Exhausted(String),
    /// Anything else (bad input, embedding generation, I/O).
    Error(String),
}

impl TrialOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            TrialOutcome::Certified { .. } => "certified",
            TrialOutcome::Exhausted(_) => "exhausted",
            TrialOutcome::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub outcome: TrialOutcome,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub theorem: TheoremId,
    pub trials: Vec<TrialRecord>,
    pub warnings: Vec<String>,
}

impl CampaignReport {
    pub fn certified(&self) -> usize {
        self.count("certified")
    }

    pub fn exhausted(&self) -> usize {
        self.count("exhausted")
    }

    pub fn errors(&self) -> usize {
        self.count("error")
    }

    fn count(&self, label: &str) -> usize {
        self.trials.iter().filter(|t| t.outcome.label() == label).count()
    }

    /// One row per trial: `index,outcome,millis,certPath`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,outcome,millis,certPath\n");
        for t in &self.trials {
            let path = match &t.outcome {
                TrialOutcome::Certified { path: Some(p), .. } => p.display().to_string(),
                _ => String::new(),
            };
            out.push_str(&format!("{},{},{},{}\n", t.index, t.outcome.label(), t.millis, path));
        }
        out
    }
}

fn worker_count() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&w| w > 0)
}

fn run_trial(spec: &CampaignSpec, index: usize) -> TrialRecord {
    let seed = spec.trial_seed(index);
    let start = Instant::now();
    let outcome = trial_outcome(spec, index, seed);
    TrialRecord { index, seed, outcome, millis: start.elapsed().as_millis() }
}

fn trial_outcome(spec: &CampaignSpec, index: usize, seed: u64) -> TrialOutcome {
    let emb = match random_embedding(spec.n, seed, spec.range) {
        Ok(e) => e,
        Err(e) => return TrialOutcome::Error(e.to_string()),
    };
    let linker = Linker::new(&emb);
    let mut cert = match run_engine(&linker, spec.theorem, spec.budget) {
        Ok(c) => c,
        Err(e @ (ConstructError::BudgetExhausted { .. } | ConstructError::StepFailed(_))) => {
            return TrialOutcome::Exhausted(e.to_string())
        }
        Err(e) => return TrialOutcome::Error(e.to_string()),
    };
    cert.seed = seed;
    if let Err(e) = verify_certificate(&emb, &cert) {
        return TrialOutcome::Exhausted(format!("certificate failed re-verification: {e}"));
    }
    let path = match &spec.out_dir {
        None => None,
        Some(dir) => {
            let emb_path = dir.join(format!("trial-{index:04}.embedding.json"));
            let cert_path = dir.join(format!("trial-{index:04}.cert.json"));
            let written = write_file(&emb_path, &embedding_to_json(&emb))
                .and_then(|_| write_file(&cert_path, &certificate_to_json(&cert)));
            if let Err(e) = written {
                return TrialOutcome::Error(e.to_string());
            }
            Some(cert_path)
        }
    };
    TrialOutcome::Certified { certificate: cert, path }
}

/// Runs independent seeded trials in parallel and collects them in trial order.
///
/// Trial i embeds K_n with seed `spec.seed + i`; the certificates depend only on
/// the spec, never on the number of workers (set by [`WORKERS_ENV`]). A graph
/// smaller than the engine's guarantee is allowed, with a warning, to probe for
/// counterexamples.
pub fn run_campaign(spec: &CampaignSpec) -> Result<CampaignReport, CampaignError> {
    if spec.trials == 0 {
        return Err(CampaignError::InvalidSpec("trial count must be at least 1".into()));
    }
    if spec.n == 0 {
        return Err(CampaignError::InvalidSpec("graph size must be at least 1".into()));
    }
    let mut warnings = Vec::new();
    match vertex_requirement(spec.theorem) {
        Ok(need) if (spec.n as u64) < need => warnings.push(format!(
            "K_{} is below the {need} vertices {} needs; running as a falsification probe",
            spec.n, spec.theorem
        )),
        Ok(_) => {}
        Err(e) => warnings.push(format!("vertex requirement unknown: {e}")),
    }
    let run = || (0..spec.trials).into_par_iter().map(|i| run_trial(spec, i)).collect::<Vec<_>>();
    let trials = match worker_count() {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| CampaignError::Workers(e.to_string()))?
            .install(run),
        None => run(),
    };
    let report = CampaignReport { theorem: spec.theorem, trials, warnings };
    if let Some(dir) = &spec.out_dir {
        write_file(&dir.join("report.csv"), &report.to_csv())?;
    }
    Ok(report)
}
