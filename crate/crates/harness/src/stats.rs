//! Transversal, mate and subsquare statistics of a found pair.

use mols10_core::equivalence::pair_certificate;
use mols10_core::myrvold::ORDER;
use mols10_core::transversal::{common_transversals, count_mate_decompositions, count_transversals};
use mols10_core::{Square, Subsquare};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::verify::{subsquare_compatible, verify_pair, Verdict};

/// Mate decompositions counted per square before stopping.
pub const DEFAULT_MATE_LIMIT: usize = 32;

#[derive(Debug, Error)]
#[error("not a verified pair: {0}")]
pub struct StatsError(pub Verdict);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    pub transversals_p: usize,
    pub transversals_q: usize,
    pub mates_p: usize,
    pub mates_q: usize,
    /// Cap applied to the mate counts; a count equal to it is a lower bound.
    pub mate_limit: Option<usize>,
    pub common_transversals: usize,
    /// Order-10 pairs only.
    pub omega1_compatible: Option<bool>,
    pub omega2_compatible: Option<bool>,
    pub certificate: String,
}

pub fn compute_stats(p: &Square, q: &Square, mate_limit: Option<usize>) -> Result<PairStats, StatsError> {
    let verdict = verify_pair(p, q);
    if !verdict.passed() {
        return Err(StatsError(verdict));
    }
    let compatible = |sub| (p.order() == ORDER).then(|| subsquare_compatible(p, sub) && subsquare_compatible(q, sub));
    Ok(PairStats {
        transversals_p: count_transversals(p),
        transversals_q: count_transversals(q),
        mates_p: count_mate_decompositions(p, mate_limit),
        mates_q: count_mate_decompositions(q, mate_limit),
        mate_limit,
        common_transversals: common_transversals(p, q).expect("same order"),
        omega1_compatible: compatible(Subsquare::Omega1),
        omega2_compatible: compatible(Subsquare::Omega2),
        certificate: pair_certificate(p, q).expect("verified pair").to_hex(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mols10_core::families::prime_mols;

    #[test]
    fn prime_pair() {
        let m = prime_mols(5);
        let q = m[0].compose(&m[1]).unwrap();
        let s = compute_stats(&m[0], &q, None).unwrap();
        assert_eq!(s.transversals_p, 15);
        assert!(s.mates_p >= 1 && s.mates_q >= 1);
        assert_eq!(s.omega1_compatible, None);
        assert!(compute_stats(&m[0], &m[0], None).is_err());
    }
}
