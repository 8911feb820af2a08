//! Portfolio runs: every (instance, seed) job on a pool of worker slots, each
//! result decoded, verified and appended through one writer.

use std::collections::VecDeque;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::Duration;

use mols10_core::cnf::{parse_dimacs, write_dimacs, Encoded, Manifest};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decode::{assignment, decode_model, model_satisfies, Decoded};
use crate::runner::{run_solver, Outcome, SolverCommand};
use crate::stats::{compute_stats, PairStats};
use crate::verify::{verify_solution, Failure, Verdict};

/// Verdict entry for a model that violates its own instance.
pub const MODEL_CHECK: &str = "model does not satisfy instance";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("workers must be at least 1")]
    NoWorkers,
    #[error("timeout must be positive")]
    ZeroTimeout,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub command: SolverCommand,
    pub timeout: Duration,
    pub workers: usize,
    pub seeds: Vec<u64>,
    pub mate_limit: Option<usize>,
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.workers == 0 {
            return Err(ConfigError::NoWorkers);
        }
        if self.timeout.is_zero() {
            return Err(ConfigError::ZeroTimeout);
        }
        Ok(())
    }
}

/// A written instance: DIMACS file plus the manifest it was generated with.
#[derive(Debug, Clone)]
pub struct Job {
    pub instance: PathBuf,
    pub manifest: Manifest,
}

/// Writes `<name>.cnf` and its `<name>.json` manifest into `dir`.
pub fn write_instance(dir: &Path, encoded: &Encoded) -> std::io::Result<Job> {
    std::fs::create_dir_all(dir)?;
    let name = &encoded.manifest.name;
    let instance = dir.join(format!("{name}.cnf"));
    let mut f = std::io::BufWriter::new(std::fs::File::create(&instance)?);
    write_dimacs(&mut f, &encoded.formula, Some(&encoded.manifest))?;
    f.flush()?;
    let manifest = serde_json::to_string_pretty(&encoded.manifest).map_err(std::io::Error::other)?;
    std::fs::write(dir.join(format!("{name}.json")), manifest + "\n")?;
    Ok(Job {
        instance,
        manifest: encoded.manifest.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRecord {
    /// Pair case such as `UX`, or the instance name for other instances.
    pub case: String,
    /// `omega1`, `omega2` or `either`.
    pub omega: String,
    pub seed: u64,
    pub outcome: Outcome,
    pub wall_seconds: f64,
    pub timeout_seconds: f64,
    #[serde(default)]
    pub peak_rss_kib: Option<u64>,
    #[serde(default)]
    pub decoded: Option<Decoded>,
    #[serde(default)]
    pub verdict: Option<Verdict>,
    #[serde(default)]
    pub stats: Option<PairStats>,
    #[serde(default)]
    pub error: Option<String>,
}

impl SolveRecord {
    /// Counted as solved only once the model has been verified.
    pub fn solved(&self) -> bool {
        self.outcome == Outcome::Sat && self.verdict.as_ref().is_some_and(Verdict::passed)
    }

    /// Wall time with timeouts charged at the full budget.
    pub fn charged_seconds(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Timeout => Some(self.timeout_seconds),
            Outcome::Error => None,
            _ => Some(self.wall_seconds),
        }
    }
}

fn labels(manifest: &Manifest) -> (String, String) {
    match &manifest.options {
        Some(o) => (o.case.id(), o.subsquare.tag().to_string()),
        None => (manifest.name.clone(), String::new()),
    }
}

/// Re-reads the instance and evaluates every clause under the model.
fn check_against_instance(instance: &Path, model: &[i32], num_vars: u32) -> Option<String> {
    let text = match std::fs::read_to_string(instance) {
        Ok(t) => t,
        Err(e) => return Some(format!("cannot reread instance: {e}")),
    };
    let formula = match parse_dimacs(&text) {
        Ok(d) => d.formula,
        Err(e) => return Some(format!("cannot reparse instance: {e}")),
    };
    match assignment(model, num_vars) {
        Ok(values) if model_satisfies(&formula, &values) => None,
        Ok(_) => Some("some clause is falsified".into()),
        Err(e) => Some(e.to_string()),
    }
}

/// Runs one job and turns the result into a record.
pub fn run_one(job: &Job, seed: u64, config: &SolverConfig) -> SolveRecord {
    let (case, omega) = labels(&job.manifest);
    let run = run_solver(&config.command, &job.instance, seed, config.timeout);
    let mut record = SolveRecord {
        case,
        omega,
        seed,
        outcome: run.outcome,
        wall_seconds: run.wall_seconds,
        timeout_seconds: config.timeout.as_secs_f64(),
        peak_rss_kib: run.peak_rss_kib,
        decoded: None,
        verdict: None,
        stats: None,
        error: run.message,
    };
    if let Some(model) = &run.model {
        match decode_model(model, &job.manifest) {
            Ok(decoded) => {
                let mut verdict = verify_solution(&decoded);
                if let Some(detail) = check_against_instance(&job.instance, model, job.manifest.num_vars) {
                    verdict.failures.push(Failure {
                        check: MODEL_CHECK.into(),
                        detail,
                    });
                }
                if verdict.passed() {
                    record.stats = compute_stats(&decoded.p, &decoded.q, config.mate_limit).ok();
                }
                record.verdict = Some(verdict);
                record.decoded = Some(decoded);
            }
            Err(e) => {
                record.verdict = Some(Verdict {
                    failures: vec![Failure {
                        check: "decode".into(),
                        detail: e.to_string(),
                    }],
                });
                record.error = Some(format!("decode: {e}"));
            }
        }
    }
    record
}

/// Runs every (job, seed) combination on `config.workers` slots. `sink` sees
/// each record as it completes, from a single thread.
pub fn run_portfolio(
    jobs: &[Job],
    config: &SolverConfig,
    mut sink: impl FnMut(&SolveRecord),
) -> Result<Vec<SolveRecord>, ConfigError> {
    config.validate()?;
    let tasks: VecDeque<(usize, u64)> = (0..jobs.len())
        .flat_map(|j| config.seeds.iter().map(move |&s| (j, s)))
        .collect();
    let total = tasks.len();
    let queue = Mutex::new(tasks);
    let (tx, rx) = mpsc::channel();
    let mut records = Vec::with_capacity(total);
    std::thread::scope(|scope| {
        for _ in 0..config.workers.min(total.max(1)) {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let next = queue.lock().expect("queue lock").pop_front();
                let Some((j, seed)) = next else { break };
                if tx.send(run_one(&jobs[j], seed, config)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for record in rx {
            sink(&record);
            records.push(record);
        }
    });
    Ok(records)
}

/// Appends records as newline-delimited JSON.
pub struct RecordLog<W: Write> {
    out: W,
}

impl<W: Write> RecordLog<W> {
    pub fn new(out: W) -> Self {
        RecordLog { out }
    }

    pub fn append(&mut self, record: &SolveRecord) -> std::io::Result<()> {
        serde_json::to_writer(&mut self.out, record)?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }
}

pub fn read_log(text: &str) -> Result<Vec<SolveRecord>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}
