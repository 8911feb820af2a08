use mols10_sat::{parse, Limits, Outcome, Solver};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force(num_vars: usize, clauses: &[Vec<i32>]) -> bool {
    (0u32..1 << num_vars).any(|bits| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
    })
}

fn satisfied(model: &[i32], clauses: &[Vec<i32>]) -> bool {
    clauses
        .iter()
        .all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize - 1] == l))
}

fn random_3sat(vars: i32, clauses: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i32>> {
    (0..clauses)
        .map(|_| {
            (0..3)
                .map(|_| {
                    let v = rng.random_range(1..=vars);
                    if rng.random() {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect()
}

fn clause_strategy(vars: i32) -> impl Strategy<Value = Vec<Vec<i32>>> {
    let lit = (1..=vars, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v });
    proptest::collection::vec(proptest::collection::vec(lit, 1..5), 0..60)
}

proptest! {
    #[test]
    fn agrees_with_brute_force(clauses in clause_strategy(10), seed in 0u64..4) {
        let mut s = Solver::new(seed);
        s.reserve_vars(10);
        for c in &clauses {
            s.add_clause(c);
        }
        let outcome = s.solve();
        prop_assert_eq!(outcome == Outcome::Sat, brute_force(10, &clauses));
        if outcome == Outcome::Sat {
            prop_assert!(satisfied(&s.model(), &clauses));
        }
    }

    #[test]
    fn incremental_matches_fresh(first in clause_strategy(8), second in clause_strategy(8)) {
        let mut s = Solver::new(1);
        s.reserve_vars(8);
        for c in &first {
            s.add_clause(c);
        }
        let _ = s.solve();
        for c in &second {
            s.add_clause(c);
        }
        let all: Vec<Vec<i32>> = first.iter().chain(&second).cloned().collect();
        prop_assert_eq!(s.solve() == Outcome::Sat, brute_force(8, &all));
    }
}

/// Hard random instances near the threshold: seeds must agree, models must
/// check, and the clause database must have been reduced along the way.
#[test]
fn random_threshold_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut reduced = false;
    for _ in 0..6 {
        let clauses = random_3sat(150, 639, &mut rng);
        let mut outcomes = Vec::new();
        for seed in [0, 7] {
            let mut s = Solver::new(seed);
            for c in &clauses {
                s.add_clause(c);
            }
            let o = s.solve();
            if o == Outcome::Sat {
                assert!(satisfied(&s.model(), &clauses));
            }
            reduced |= s.stats().reductions > 0;
            outcomes.push(o);
        }
        assert_eq!(outcomes[0], outcomes[1]);
    }
    assert!(reduced);
}

/// Enumerating all models with blocking clauses counts them exactly.
#[test]
fn model_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let clauses = random_3sat(9, 25, &mut rng);
        let expected = (0u32..1 << 9)
            .filter(|bits| {
                clauses
                    .iter()
                    .all(|c| c.iter().any(|&l| (bits >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0)))
            })
            .count();
        let mut s = Solver::new(3);
        s.reserve_vars(9);
        for c in &clauses {
            s.add_clause(c);
        }
        let mut found = 0;
        while s.solve() == Outcome::Sat {
            found += 1;
            let block: Vec<i32> = s.model().iter().map(|l| -l).collect();
            s.add_clause(&block);
        }
        assert_eq!(found, expected);
    }
}

#[test]
fn interrupt_flag() {
    use std::sync::atomic::AtomicBool;
    use std::sync::Arc;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut s = Solver::new(0);
    for c in random_3sat(400, 1704, &mut rng) {
        s.add_clause(&c);
    }
    let limits = Limits {
        interrupt: Some(Arc::new(AtomicBool::new(true))),
        ..Limits::default()
    };
    assert_eq!(s.solve_limited(&limits), Outcome::Unknown);
}

#[test]
fn parsed_problem_solves() {
    let p = parse("p cnf 3 3\n1 2 0\n-1 0\n-2 3 0\n").unwrap();
    let mut s = Solver::new(0);
    s.reserve_vars(p.num_vars);
    for c in &p.clauses {
        s.add_clause(c);
    }
    assert_eq!(s.solve(), Outcome::Sat);
    assert_eq!(s.model(), vec![-1, 2, 3]);
}
