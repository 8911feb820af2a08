//! DIMACS CNF text. The manifest, when present, travels in a `c manifest`
//! comment line so a model can be decoded from the instance file alone.

use std::io::{self, Write};

use super::case::Manifest;
use super::{CnfError, CnfFormula};

const MANIFEST_PREFIX: &str = "c manifest ";

/// Writes `formula` with optional manifest comments.
pub fn write_dimacs<W: Write>(out: &mut W, formula: &CnfFormula, manifest: Option<&Manifest>) -> io::Result<()> {
    let mut w = io::BufWriter::new(out);
    if let Some(m) = manifest {
        writeln!(w, "c instance {}", m.name)?;
        for b in m.vars.cell_blocks() {
            writeln!(w, "c block cells {} {} {}", b.square, b.first_var, b.first_var + b.len - 1)?;
        }
        for b in m.vars.colour_blocks() {
            writeln!(w, "c block colours {} {} {}", b.square, b.first_var, b.first_var + b.len - 1)?;
        }
        if let Some(first) = m.vars.omega_first() {
            writeln!(w, "c block omega {} {}", first, first + 1)?;
        }
        for f in &m.families {
            writeln!(w, "c family {} {}", f.name, f.clauses)?;
        }
        let json = serde_json::to_string(m).map_err(io::Error::other)?;
        writeln!(w, "{MANIFEST_PREFIX}{json}")?;
    }
    writeln!(w, "p cnf {} {}", formula.num_vars, formula.num_clauses())?;
    for clause in &formula.clauses {
        for lit in clause {
            write!(w, "{lit} ")?;
        }
        writeln!(w, "0")?;
    }
    w.flush()
}

pub fn to_dimacs_string(formula: &CnfFormula, manifest: Option<&Manifest>) -> String {
    let mut buf = Vec::new();
    write_dimacs(&mut buf, formula, manifest).expect("writing to memory");
    String::from_utf8(buf).expect("ASCII output")
}

#[derive(Debug, Clone)]
pub struct Dimacs {
    pub formula: CnfFormula,
    pub manifest: Option<Manifest>,
}

/// Parses DIMACS CNF. Clauses may span lines; the header counts are checked.
pub fn parse_dimacs(text: &str) -> Result<Dimacs, CnfError> {
    let mut header: Option<(u32, usize)> = None;
    let mut manifest = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(json) = line.strip_prefix(MANIFEST_PREFIX) {
            manifest = Some(
                serde_json::from_str::<Manifest>(json)
                    .map_err(|e| CnfError::Parse(format!("line {}: manifest: {e}", lineno + 1)))?,
            );
            continue;
        }
        if line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if header.is_some() || parts.len() != 3 || parts[0] != "cnf" {
                return Err(CnfError::Parse(format!("line {}: bad header", lineno + 1)));
            }
            let vars = parts[1]
                .parse()
                .map_err(|_| CnfError::Parse(format!("line {}: bad variable count", lineno + 1)))?;
            let count = parts[2]
                .parse()
                .map_err(|_| CnfError::Parse(format!("line {}: bad clause count", lineno + 1)))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| CnfError::Parse(format!("line {}: clause before header", lineno + 1)))?;
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| CnfError::Parse(format!("line {}: bad literal {tok:?}", lineno + 1)))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                if lit.unsigned_abs() > vars {
                    return Err(CnfError::Parse(format!("line {}: literal {lit} beyond {vars}", lineno + 1)));
                }
                current.push(lit);
            }
        }
    }
    let (num_vars, count) = header.ok_or_else(|| CnfError::Parse("missing header".into()))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(CnfError::Parse(format!("header declares {count} clauses, found {}", clauses.len())));
    }
    Ok(Dimacs {
        formula: CnfFormula { num_vars, clauses },
        manifest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_unit() {
        let f = CnfFormula::new(0);
        assert_eq!(to_dimacs_string(&f, None), "p cnf 0 0\n");
        let mut f = CnfFormula::new(1);
        f.add_clause(vec![1]);
        assert_eq!(to_dimacs_string(&f, None), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn multi_line_clause_and_comments() {
        let d = parse_dimacs("c hello\np cnf 3 2\n1 -2\n 3 0\n-1 0\n").unwrap();
        assert_eq!(d.formula.clauses, vec![vec![1, -2, 3], vec![-1]]);
        assert!(d.manifest.is_none());
    }

    #[test]
    fn malformed() {
        assert!(parse_dimacs("1 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\nx 0\n").is_err());
    }
}
