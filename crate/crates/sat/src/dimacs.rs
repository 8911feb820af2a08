use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Problem {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

/// Parses DIMACS CNF. Comment lines are skipped and clauses may span lines.
pub fn parse(text: &str) -> Result<Problem, ParseError> {
    let err = |line: usize, message: String| ParseError { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let n = k + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(err(n, format!("bad header `{t}`")));
            }
            let v = f[2].parse().map_err(|_| err(n, "bad variable count".into()))?;
            let c = f[3].parse().map_err(|_| err(n, "bad clause count".into()))?;
            header = Some((v, c));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(n, "clause before header".into()));
        };
        for tok in t.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(n, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(err(n, format!("literal {lit} exceeds {num_vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let Some((num_vars, num_clauses)) = header else {
        return Err(err(0, "missing header".into()));
    };
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != num_clauses {
        return Err(err(0, format!("header declares {num_clauses} clauses, found {}", clauses.len())));
    }
    Ok(Problem { num_vars, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_line_clauses() {
        let p = parse("c hi\np cnf 3 2\n1 -2\n 3 0 -1 0\n").unwrap();
        assert_eq!(p.clauses, vec![vec![1, -2, 3], vec![-1]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse("1 0\n").is_err());
        assert!(parse("p cnf 1 1\n2 0\n").is_err());
        assert!(parse("p cnf 1 2\n1 0\n").is_err());
    }
}
