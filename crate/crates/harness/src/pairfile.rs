//! Pair files: two squares in the text format, or a JSON decoded pair, or a
//! solve record carrying one.

use std::path::Path;

use mols10_core::{Square, SquareError};
use thiserror::Error;

use crate::decode::Decoded;

#[derive(Debug, Error)]
pub enum PairFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad JSON pair: {0}")]
    Json(#[from] serde_json::Error),
    #[error("record has no decoded pair")]
    NoPair,
    #[error("expected two squares: {0}")]
    Text(String),
    #[error(transparent)]
    Square(#[from] SquareError),
}

pub fn read_pair(path: &Path) -> Result<Decoded, PairFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| PairFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_pair(&text)
}

pub fn parse_pair(text: &str) -> Result<Decoded, PairFileError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(trimmed)?;
        let inner = match value.get("decoded") {
            Some(serde_json::Value::Null) => return Err(PairFileError::NoPair),
            Some(d) => d.clone(),
            None => value,
        };
        return Ok(serde_json::from_value(inner)?);
    }
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut squares = Vec::new();
    let mut at = 0;
    while at < lines.len() {
        let n: usize = lines[at]
            .parse()
            .map_err(|_| PairFileError::Text(format!("bad order line {:?}", lines[at])))?;
        let end = at + 1 + n;
        if end > lines.len() {
            return Err(PairFileError::Text(format!("square {} is truncated", squares.len() + 1)));
        }
        squares.push(Square::parse_text(&lines[at..end].join("\n"))?);
        at = end;
    }
    match <[Square; 2]>::try_from(squares) {
        Ok([p, q]) => Ok(Decoded::bare(p, q)),
        Err(v) => Err(PairFileError::Text(format!("found {} squares", v.len()))),
    }
}

pub fn pair_to_text(p: &Square, q: &Square) -> String {
    format!("# P\n{p}# Q\n{q}")
}
