use itertools::Itertools;
use mols10_core::families::latin_squares;
use mols10_core::myrvold::{omega1, omega2};
use mols10_core::transversal::{
    count_mate_decompositions, count_transversals, enumerate_transversals, mate_decompositions, trp_from_decomposition,
};
use mols10_core::{Permutation, Square};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rows selected per column, filtered by symbol distinctness.
fn naive(square: &Square) -> Vec<Vec<u8>> {
    let n = square.order();
    (0..n as u8)
        .permutations(n)
        .filter(|rows| {
            let symbols: Vec<usize> = rows.iter().enumerate().map(|(j, &r)| square.get(r as usize, j)).collect();
            symbols.iter().all_unique()
        })
        .collect()
}

fn isotope(base: &Square, rng: &mut ChaCha8Rng) -> Square {
    let n = base.order();
    let mut perm = || {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.shuffle(rng);
        Permutation::from_image(v).unwrap()
    };
    let (r, c, s) = (perm(), perm(), perm());
    base.permuted(&r, &c, &s)
}

#[test]
fn enumeration_matches_naive_filter() {
    let mut samples: Vec<Square> = Vec::new();
    for n in 1..=4 {
        samples.extend(latin_squares(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let order5 = latin_squares(5);
    samples.extend(order5.choose_multiple(&mut rng, 300).cloned());
    samples.push(isotope(&Square::cyclic(5), &mut rng));
    for sq in &samples {
        let fast: Vec<Vec<u8>> = enumerate_transversals(sq, false)
            .iter()
            .map(|t| t.row_of_column().to_vec())
            .collect();
        assert_eq!(fast, naive(sq), "mismatch on\n{sq}");
    }
}

#[test]
fn known_counts() {
    assert_eq!(count_transversals(&omega1()), 0);
    assert_eq!(count_transversals(&omega2()), 8);
    assert_eq!(count_transversals(&Square::cyclic(3)), 3);
    assert_eq!(count_transversals(&Square::cyclic(5)), 15);
    assert_eq!(count_transversals(&Square::cyclic(7)), 133);
    assert_eq!(count_mate_decompositions(&omega1(), None), 0);
    assert_eq!(count_mate_decompositions(&Square::cyclic(3), None), 1);
    assert_eq!(count_mate_decompositions(&omega2(), None), 2);
}

/// Decompositions of order-4 squares recovered by brute force over all
/// 4-subsets of the transversal list.
#[test]
fn decompositions_match_subset_search() {
    for sq in latin_squares(4) {
        let ts = enumerate_transversals(&sq, false);
        let brute = ts
            .iter()
            .combinations(4)
            .filter(|parts| parts.iter().tuple_combinations().all(|(a, b)| a.is_disjoint(b)))
            .count();
        assert_eq!(count_mate_decompositions(&sq, None), brute);
        for parts in mate_decompositions(&sq, None) {
            let t = trp_from_decomposition(&sq, &parts).unwrap();
            assert!(t.is_trp(&sq).unwrap());
            assert!(t.is_latin());
        }
    }
}
