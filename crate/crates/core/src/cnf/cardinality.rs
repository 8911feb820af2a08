//! Exactly-`r` constraints: the totalizer of Bailleux and Boufkhad (unary
//! counters summed up a balanced binary tree) and the pairwise exactly-one.

use super::varmap::AuxVars;
use super::{Clause, CnfError, Lit};

/// Clauses whose models, restricted to `lits`, are exactly the assignments with
/// `target` true literals. `target = 0` and `target = lits.len()` become unit
/// clauses; otherwise a totalizer whose counters are capped at `target + 1`.
pub fn exactly(lits: &[Lit], target: usize, aux: &mut impl AuxVars) -> Result<Vec<Clause>, CnfError> {
    let len = lits.len();
    if target > len {
        return Err(CnfError::TargetOutOfRange { target, len });
    }
    if target == 0 {
        return Ok(lits.iter().map(|&l| vec![-l]).collect());
    }
    if target == len {
        return Ok(lits.iter().map(|&l| vec![l]).collect());
    }
    let mut clauses = Vec::new();
    let outputs = totalizer(lits, target + 1, aux, &mut clauses);
    clauses.push(vec![outputs[target - 1]]);
    // target < len, so the counter has a (target + 1)-th output.
    clauses.push(vec![-outputs[target]]);
    Ok(clauses)
}

/// Builds the counter for `lits`; output `i` (0-based) means "at least `i + 1`
/// inputs are true". Outputs are capped at `cap`.
fn totalizer(lits: &[Lit], cap: usize, aux: &mut impl AuxVars, clauses: &mut Vec<Clause>) -> Vec<Lit> {
    if lits.len() == 1 {
        return lits.to_vec();
    }
    let (left, right) = lits.split_at(lits.len() / 2);
    let a = totalizer(left, cap, aux, clauses);
    let b = totalizer(right, cap, aux, clauses);
    let width = lits.len().min(cap);
    let out: Vec<Lit> = (0..width).map(|_| aux.fresh()).collect();

    // Upward: a >= alpha and b >= beta imply out >= alpha + beta.
    for alpha in 0..=a.len() {
        for beta in 0..=b.len() {
            let sum = alpha + beta;
            if sum == 0 || sum > width {
                continue;
            }
            let mut c = Vec::with_capacity(3);
            if alpha > 0 {
                c.push(-a[alpha - 1]);
            }
            if beta > 0 {
                c.push(-b[beta - 1]);
            }
            c.push(out[sum - 1]);
            clauses.push(c);
        }
    }
    // Downward: a < alpha + 1 and b < beta + 1 imply out < alpha + beta + 1.
    // A capped child cannot certify "fewer than cap + 1", so those rows are skipped.
    let a_full = a.len() == left.len();
    let b_full = b.len() == right.len();
    for alpha in 0..=a.len() {
        if alpha == a.len() && !a_full {
            continue;
        }
        for beta in 0..=b.len() {
            if beta == b.len() && !b_full {
                continue;
            }
            let sum = alpha + beta;
            if sum >= width {
                continue;
            }
            let mut c = Vec::with_capacity(3);
            if alpha < a.len() {
                c.push(a[alpha]);
            }
            if beta < b.len() {
                c.push(b[beta]);
            }
            c.push(-out[sum]);
            clauses.push(c);
        }
    }
    out
}

/// Pairwise exactly-one: one at-least-one clause and `C(len, 2)` binary at-most-one clauses.
pub fn exactly_one_pairwise(lits: &[Lit]) -> Vec<Clause> {
    let mut clauses = Vec::with_capacity(1 + lits.len() * lits.len().saturating_sub(1) / 2);
    clauses.push(lits.to_vec());
    for (i, &x) in lits.iter().enumerate() {
        for &y in &lits[i + 1..] {
            clauses.push(vec![-x, -y]);
        }
    }
    clauses
}
