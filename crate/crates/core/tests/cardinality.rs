use mols10_core::cnf::cardinality::{exactly, exactly_one_pairwise};
use mols10_core::cnf::varmap::AuxVars;
use mols10_core::cnf::{Clause, Lit};

struct Counter(i32);

impl AuxVars for Counter {
    fn fresh(&mut self) -> Lit {
        self.0 += 1;
        self.0
    }
}

/// Plain DPLL over a partial assignment indexed by variable.
fn satisfiable(clauses: &[Clause], assign: &mut Vec<Option<bool>>) -> bool {
    let mut trail = Vec::new();
    let ok = loop {
        let mut changed = false;
        let mut conflict = false;
        for c in clauses {
            let mut unassigned = None;
            let mut free = 0;
            let mut sat = false;
            for &l in c {
                match assign[l.unsigned_abs() as usize] {
                    Some(v) if v == (l > 0) => {
                        sat = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        free += 1;
                        unassigned = Some(l);
                    }
                }
            }
            if sat {
                continue;
            }
            match free {
                0 => {
                    conflict = true;
                    break;
                }
                1 => {
                    let l = unassigned.unwrap();
                    assign[l.unsigned_abs() as usize] = Some(l > 0);
                    trail.push(l.unsigned_abs() as usize);
                    changed = true;
                }
                _ => {}
            }
        }
        if conflict {
            break false;
        }
        if !changed {
            break match (1..assign.len()).find(|&v| assign[v].is_none()) {
                None => true,
                Some(v) => [true, false].into_iter().any(|value| {
                    assign[v] = Some(value);
                    let r = satisfiable(clauses, assign);
                    assign[v] = None;
                    r
                }),
            };
        }
    };
    for v in trail {
        assign[v] = None;
    }
    ok
}

fn check(size: usize, target: usize, clauses: &[Clause], num_vars: usize) {
    for mask in 0u32..1 << size {
        let mut assign = vec![None; num_vars + 1];
        for v in 0..size {
            assign[v + 1] = Some(mask >> v & 1 == 1);
        }
        let expected = mask.count_ones() as usize == target;
        assert_eq!(
            satisfiable(clauses, &mut assign),
            expected,
            "size {size} target {target} mask {mask:b}"
        );
    }
}

#[test]
fn totalizer_exhaustive_up_to_eight() {
    for size in 1..=8 {
        for target in 0..=size {
            let lits: Vec<Lit> = (1..=size as Lit).collect();
            let mut aux = Counter(size as Lit);
            let clauses = exactly(&lits, target, &mut aux).unwrap();
            check(size, target, &clauses, aux.0 as usize);
        }
    }
}

#[test]
fn totalizer_with_negated_inputs() {
    // "exactly 2 of x1, ¬x2, x3, ¬x4"
    let lits = [1, -2, 3, -4];
    let mut aux = Counter(4);
    let clauses = exactly(&lits, 2, &mut aux).unwrap();
    for mask in 0u32..16 {
        let mut assign = vec![None; aux.0 as usize + 1];
        for v in 0..4 {
            assign[v + 1] = Some(mask >> v & 1 == 1);
        }
        let weight = lits
            .iter()
            .filter(|&&l| (mask >> (l.unsigned_abs() - 1) & 1 == 1) == (l > 0))
            .count();
        assert_eq!(satisfiable(&clauses, &mut assign), weight == 2);
    }
}

#[test]
fn pairwise_exhaustive() {
    for size in 1..=8 {
        let lits: Vec<Lit> = (1..=size as Lit).collect();
        check(size, 1, &exactly_one_pairwise(&lits), size);
    }
}
