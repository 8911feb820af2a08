#![allow(dead_code)]

use std::path::PathBuf;

use mols10_core::cnf::{
    encode_latin_trp, CnfFormula, Encoder, EncodeOptions, Encoded, LatinEncoding, Manifest, SquareId, SubsquareChoice,
    TrpEncoding, VarMap,
};
use mols10_core::myrvold::ORDER;
use mols10_core::{PairCase, Square, Subsquare};
use mols10_harness::pairfile::read_pair;
use mols10_sat::{Outcome, Solver};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn trp10() -> (Square, Square) {
    let d = read_pair(&fixture("trp10.txt")).expect("fixture");
    (d.p, d.q)
}

pub fn solve(formula: &CnfFormula, seed: u64) -> Option<Vec<i32>> {
    let mut s = Solver::new(seed);
    s.reserve_vars(formula.num_vars as usize);
    for c in &formula.clauses {
        if !s.add_clause(c) {
            return None;
        }
    }
    match s.solve() {
        Outcome::Sat => Some(s.model()),
        Outcome::Unsat => None,
        Outcome::Unknown => panic!("unlimited solve returned unknown"),
    }
}

/// The case instance without the TRP link between P and Q. Everything else,
/// colours, subsquare and normal form, is kept.
pub fn relaxed_case(case: PairCase, choice: SubsquareChoice) -> Encoded {
    use SquareId::{P, Q};
    let mut vm = VarMap::new(ORDER);
    vm.add_square(P);
    vm.add_square(Q);
    vm.add_colours(P);
    vm.add_colours(Q);
    vm.add_omegas();
    let (w1, w2) = (vm.omega(1), vm.omega(2));
    let mut enc = Encoder::new(vm);
    enc.latin(P, LatinEncoding::Totalizer);
    enc.latin(Q, LatinEncoding::Totalizer);
    enc.colours(P, case.first);
    enc.colours(Q, case.second);
    enc.colour_consistency(P, Q, true);
    let omegas = [(w1, Subsquare::Omega1.square()), (w2, Subsquare::Omega2.square())];
    enc.subsquare(P, &omegas);
    enc.subsquare(Q, &omegas);
    let mut choice_clauses = vec![vec![w1, w2]];
    match choice {
        SubsquareChoice::Omega1 => choice_clauses.push(vec![w1]),
        SubsquareChoice::Omega2 => choice_clauses.push(vec![w2]),
        SubsquareChoice::Either => {}
    }
    enc.add("subsquare-choice", choice_clauses);
    enc.symmetry_breaking(P, Q, case.first, case.second, true);
    let (formula, vars, families) = enc.finish();
    let options = EncodeOptions::new(case, choice);
    let manifest = Manifest {
        name: format!("relaxed-{}", options.instance_name()),
        order: ORDER,
        options: Some(options),
        num_vars: formula.num_vars,
        num_clauses: formula.num_clauses(),
        vars,
        families,
    };
    Encoded { formula, manifest }
}

/// Order-`n` Latin TRP instance with P and Q pinned by unit clauses.
pub fn pinned_latin_trp(p: &Square, q: &Square, trp: TrpEncoding) -> Encoded {
    let mut e = encode_latin_trp(p.order(), trp, LatinEncoding::Pairwise, true);
    let n = p.order();
    for (sq, id) in [(p, SquareId::P), (q, SquareId::Q)] {
        for i in 0..n {
            for j in 0..n {
                let lit = e.manifest.vars.cell(id, i, j, sq.get(i, j));
                e.formula.add_clause(vec![lit]);
            }
        }
    }
    e.manifest.num_clauses = e.formula.num_clauses();
    e
}
