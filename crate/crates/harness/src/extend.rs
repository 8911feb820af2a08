//! Whether a pair extends to a triple of mutual transversal representations.

use std::path::Path;
use std::time::Duration;

use mols10_core::cnf::{encode_extension, write_dimacs, LatinEncoding, SquareId};
use mols10_core::Square;
use thiserror::Error;

use crate::decode::{assignment, decode_square, DecodeError};
use crate::runner::{run_solver, Outcome, SolverCommand};
use crate::verify::{verify_pair, Verdict};

#[derive(Debug, Error)]
pub enum ExtendError {
    #[error("input rejected: {0}")]
    Unverified(Verdict),
    #[error("cannot write instance: {0}")]
    Io(#[from] std::io::Error),
    #[error("solver model does not decode: {0}")]
    Decode(#[from] DecodeError),
    #[error("solver reported a third square that is not a mutual partner")]
    BadWitness,
    #[error("solver failed: {0}")]
    Solver(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionResult {
    pub outcome: Outcome,
    pub wall_seconds: f64,
    /// The third square, on SAT.
    pub third: Option<Square>,
}

/// Encodes the extension problem for a verified pair, writes it into `workdir`
/// and solves it.
pub fn check_extendability(
    p: &Square,
    q: &Square,
    cmd: &SolverCommand,
    timeout: Duration,
    workdir: &Path,
) -> Result<ExtensionResult, ExtendError> {
    let verdict = verify_pair(p, q);
    if !verdict.passed() {
        return Err(ExtendError::Unverified(verdict));
    }
    let encoded = encode_extension(p, q, LatinEncoding::Totalizer).expect("verified pair encodes");
    std::fs::create_dir_all(workdir)?;
    let path = workdir.join("extension.cnf");
    let mut file = std::io::BufWriter::new(std::fs::File::create(&path)?);
    write_dimacs(&mut file, &encoded.formula, Some(&encoded.manifest))?;
    drop(file);
    let run = run_solver(cmd, &path, 0, timeout);
    let mut third = None;
    match run.outcome {
        Outcome::Sat => {
            let values = assignment(run.model.as_deref().unwrap_or_default(), encoded.manifest.num_vars)?;
            let l = decode_square(&values, &encoded.manifest.vars, SquareId::L)?;
            if !verify_pair(&l, p).passed() || !verify_pair(&l, q).passed() {
                return Err(ExtendError::BadWitness);
            }
            third = Some(l);
        }
        Outcome::Error => return Err(ExtendError::Solver(run.message.unwrap_or_default())),
        _ => {}
    }
    Ok(ExtensionResult {
        outcome: run.outcome,
        wall_seconds: run.wall_seconds,
        third,
    })
}
