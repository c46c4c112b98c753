use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ilink_core::constructions::{verify_certificate, ConstructError, SearchBudget, TheoremId};
use ilink_core::harness::{
    certificate_to_json, default_range, embedding_to_json, random_embedding, read_certificate, read_embedding,
    run_campaign, run_engine, write_file, CampaignSpec, TrialOutcome,
};
use ilink_core::sequences::{lookup, SEQUENCE_NAMES};
use ilink_core::spatial::{Embedding, Linker, OrientedCycle};

const EMBEDDING_SCHEMA: &str = r#"embedding JSON: {"n": <int>, "coords": [["<x>", "<y>", "<z>"], ...]} (decimal integer strings)"#;
const CERTIFICATE_SCHEMA: &str = r#"certificate JSON: {"theorem": <id>, "components": [[v0, v1, ...], ...], "linkingMatrix": [[<int>]], "caseTrace": [<string>], "orientationFlips": [<bool>], "seed": <int>}"#;
const THEOREM_IDS: &str = "nonsplit-pair, nonsplit-pair-odd, triangle-mcycle, three-component-odd, even-link:r=R, \
ring-of-keys:n=N, ring-of-keys-odd:n=N, star:n=N, mod2-whitehead:r=R, mod2-keys:n=N,r=R, mod4, mod2-rings:r=R, \
all-even:n=N, mod3, mod3-keys:n=N";

/// Exact linking numbers and certified link constructions in straight-line
/// embeddings of complete graphs.
#[derive(Parser)]
#[command(name = "ilink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a seeded random general-position embedding of K_n.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Side of the coordinate cube (default: max(10^6, n^3)).
        #[arg(long)]
        range: Option<u64>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the linking number of two disjoint cycles.
    Lk {
        #[arg(long)]
        embedding: PathBuf,
        /// Comma-separated vertex list; give exactly two.
        #[arg(long = "cycle", required = true, num_args = 1)]
        cycles: Vec<String>,
    },
    /// Run one construction and print its certificate.
    Construct {
        /// Theorem id, e.g. `mod3` or `ring-of-keys:n=3`.
        theorem: String,
        /// Size of the random embedding (default: the engine's requirement).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        range: Option<u64>,
        /// Use this embedding instead of a random one.
        #[arg(long, conflicts_with_all = ["n", "range"])]
        embedding: Option<PathBuf>,
        /// Stop pair searches after this many candidates.
        #[arg(long)]
        max_candidates: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded campaign of independent trials and summarize it.
    Verify {
        theorem: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        range: Option<u64>,
        #[arg(long)]
        max_candidates: Option<u64>,
        /// Directory for embeddings, certificates and report.csv.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print entries of the vertex-count sequences.
    Seq {
        #[arg(long)]
        name: String,
        /// Print this index only; without it, print indices 1..=upto.
        #[arg(long)]
        index: Option<u64>,
        /// Second parameter (r for beta_prime, final target for vertex_budget).
        #[arg(long)]
        second: Option<u64>,
        #[arg(long, default_value_t = 8)]
        upto: u64,
        /// Print JSON rows instead of bare values.
        #[arg(long)]
        json: bool,
    },
    /// Re-verify a certificate against an embedding.
    CheckCert {
        cert: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
    },
}

/// A failed command: exit code 1 for falsification or exhaustion, 2 for usage.
enum Failure {
    Falsified(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, Failure> {
    s.parse().map_err(|e| usage(format!("{e}\nknown ids: {THEOREM_IDS}")))
}

fn load_embedding(path: &Path) -> Result<Embedding, Failure> {
    read_embedding(path).map_err(|e| usage(format!("{e}\n{EMBEDDING_SCHEMA}")))
}

fn budget(max_candidates: Option<u64>) -> SearchBudget {
    SearchBudget { max_candidates: max_candidates.unwrap_or(u64::MAX), ..SearchBudget::default() }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => write_file(p, text).map_err(usage),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn size_for(theorem: TheoremId, n: Option<usize>) -> Result<usize, Failure> {
    match n {
        Some(n) => Ok(n),
        None => ilink_core::harness::vertex_requirement(theorem)
            .map(|v| v as usize)
            .map_err(|e| usage(format!("{e}; pass --n explicitly"))),
    }
}

fn parse_cycle(s: &str, n: usize) -> Result<OrientedCycle, Failure> {
    let vs = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| usage(format!("bad vertex `{t}` in cycle `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let c = OrientedCycle::new(vs).map_err(usage)?;
    c.check_range(n).map_err(usage)?;
    Ok(c)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { n, seed, range, out } => {
            let e = random_embedding(n, seed, range.unwrap_or_else(|| default_range(n))).map_err(usage)?;
            emit(&embedding_to_json(&e), out.as_deref())
        }
        Command::Lk { embedding, cycles } => {
            let e = load_embedding(&embedding)?;
            if cycles.len() != 2 {
                return Err(usage(format!("expected exactly two --cycle arguments, got {}", cycles.len())));
            }
            let a = parse_cycle(&cycles[0], e.n())?;
            let b = parse_cycle(&cycles[1], e.n())?;
            let lk = Linker::direct(&e).lk(&a, &b).map_err(usage)?;
            println!("{lk}");
            Ok(())
        }
        Command::Construct { theorem, n, seed, range, embedding, max_candidates, out } => {
            let id = parse_theorem(&theorem)?;
            let e = match embedding {
                Some(p) => load_embedding(&p)?,
                None => {
                    let n = size_for(id, n)?;
                    random_embedding(n, seed, range.unwrap_or_else(|| default_range(n))).map_err(usage)?
                }
            };
            let mut cert = match run_engine(&Linker::new(&e), id, budget(max_candidates)) {
                Ok(c) => c,
                Err(err @ (ConstructError::BudgetExhausted { .. } | ConstructError::StepFailed(_))) => {
                    return Err(Failure::Falsified(err.to_string()))
                }
                Err(err) => return Err(usage(err)),
            };
            cert.seed = seed;
            verify_certificate(&e, &cert).map_err(|err| Failure::Falsified(format!("certificate failed re-verification: {err}")))?;
            emit(&certificate_to_json(&cert), out.as_deref())
        }
        Command::Verify { theorem, n, trials, seed, range, max_candidates, out_dir } => {
            let id = parse_theorem(&theorem)?;
            let n = size_for(id, n)?;
            let spec = CampaignSpec {
                range: range.unwrap_or_else(|| default_range(n)),
                budget: budget(max_candidates),
                out_dir,
                ..CampaignSpec::new(id, n, trials, seed)
            };
            let report = run_campaign(&spec).map_err(usage)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", report.to_csv());
            for t in &report.trials {
                match &t.outcome {
                    TrialOutcome::Exhausted(m) | TrialOutcome::Error(m) => eprintln!("trial {} (seed {}): {m}", t.index, t.seed),
                    TrialOutcome::Certified { .. } => {}
                }
            }
            let summary = format!(
                "{id} on K_{n}: {} certified, {} exhausted, {} errors of {trials}",
                report.certified(),
                report.exhausted(),
                report.errors()
            );
            if report.certified() == trials {
                eprintln!("{summary}");
                Ok(())
            } else {
                Err(Failure::Falsified(summary))
            }
        }
        Command::Seq { name, index, second, upto, json } => {
            if !SEQUENCE_NAMES.contains(&name.replace('-', "_").as_str()) {
                return Err(usage(format!("unknown sequence `{name}`; known: {}", SEQUENCE_NAMES.join(", "))));
            }
            let indices: Vec<u64> = match index {
                Some(i) => vec![i],
                None => (1..=upto).collect(),
            };
            for i in indices {
                match lookup(&name, i, second) {
                    Ok(v) if json => println!("{}", serde_json::to_string(&v).expect("row serializes")),
                    Ok(v) if index.is_some() => println!("{}", v.value),
                    Ok(v) => println!("{i} {}", v.value),
                    Err(e) if index.is_some() => return Err(usage(e)),
                    Err(_) => {}
                }
            }
            Ok(())
        }
        Command::CheckCert { cert, embedding } => {
            let e = load_embedding(&embedding)?;
            let c = read_certificate(&cert).map_err(|err| usage(format!("{err}\n{CERTIFICATE_SCHEMA}")))?;
            verify_certificate(&e, &c).map_err(|err| Failure::Falsified(format!("certificate rejected: {err}")))?;
            println!("ok: {} with {} components", c.theorem, c.components.len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
