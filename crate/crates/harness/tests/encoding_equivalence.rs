use std::collections::BTreeSet;

use mols10_core::cnf::{encode_latin_trp, Encoded, LatinEncoding, SquareId, TrpEncoding};
use mols10_core::families::latin_squares;
use mols10_harness::decode::{assignment, decode_square};
use mols10_sat::{Outcome, Solver};

type Pair = (Vec<u8>, Vec<u8>);

/// Every (P, Q) projection of the instance's models, by blocking each one found.
fn projected_models(e: &Encoded) -> BTreeSet<Pair> {
    let vars = &e.manifest.vars;
    let n = e.manifest.order;
    let mut s = Solver::new(0);
    s.reserve_vars(e.formula.num_vars as usize);
    for c in &e.formula.clauses {
        assert!(s.add_clause(c));
    }
    let mut found = BTreeSet::new();
    while s.solve() == Outcome::Sat {
        let values = assignment(&s.model(), e.manifest.num_vars).unwrap();
        let p = decode_square(&values, vars, SquareId::P).unwrap();
        let q = decode_square(&values, vars, SquareId::Q).unwrap();
        let mut block = Vec::with_capacity(2 * n * n);
        for (sq, id) in [(&p, SquareId::P), (&q, SquareId::Q)] {
            for i in 0..n {
                for j in 0..n {
                    block.push(-vars.cell(id, i, j, sq.get(i, j)));
                }
            }
        }
        assert!(found.insert((p.cells().to_vec(), q.cells().to_vec())), "model repeated");
        if !s.add_clause(&block) {
            break;
        }
    }
    found
}

fn brute_force(n: usize) -> BTreeSet<Pair> {
    let all = latin_squares(n);
    let mut out = BTreeSet::new();
    for p in &all {
        for q in &all {
            if p.is_trp(q).unwrap() {
                out.insert((p.cells().to_vec(), q.cells().to_vec()));
            }
        }
    }
    out
}

#[test]
fn order4_encodings_have_identical_projections() {
    let reference = brute_force(4);
    assert_eq!(reference.len(), 6912);
    for latin in [LatinEncoding::Pairwise, LatinEncoding::Totalizer] {
        let composition = projected_models(&encode_latin_trp(4, TrpEncoding::Composition, latin, true));
        let direct = projected_models(&encode_latin_trp(4, TrpEncoding::Direct, latin, false));
        assert_eq!(composition, direct, "{latin:?}");
        assert_eq!(composition, reference, "{latin:?}");
    }
    let bare = projected_models(&encode_latin_trp(4, TrpEncoding::Composition, LatinEncoding::Pairwise, false));
    assert_eq!(bare, reference);
}

#[test]
fn order3_matches_brute_force() {
    let reference = brute_force(3);
    assert!(!reference.is_empty());
    for trp in [TrpEncoding::Composition, TrpEncoding::Direct] {
        let e = encode_latin_trp(3, trp, LatinEncoding::Pairwise, true);
        assert_eq!(projected_models(&e), reference, "{trp:?}");
    }
}
